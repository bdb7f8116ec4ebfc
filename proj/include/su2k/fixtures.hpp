#pragma once

// Golden-fixture verification: loads the reference data file (published
// symbol values, generator matrices and benchmark braidwords) and replays
// every entry against the implementation. This is the single source of
// truth for fixture health; the CLI `verify` command and the acceptance
// suite both run it.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "su2k/anyonmodel.hpp"
#include "su2k/metrics.hpp"

namespace su2k::fixtures {

struct RSymbolRow {
  int k, j1, j2, j;
  cplx value;
};

struct FSymbolRow {
  int k, j1, j2, j3, j, j12, j23;
  double value;
};

struct Gate1Row {
  int k;
  char target;            // 'H' or 'T'
  std::string status;     // verified | reconstructed | damaged
  std::string gauge;      // std | ref
  std::string word;
  double d;
};

struct Gate2Row {
  int k;
  bool inverses;
  std::string status;
  std::string word;
  double d;
};

struct Swap9Row {
  int k;
  std::string word;
  double dswap, m11, du;
};

struct GoldenData {
  std::vector<RSymbolRow> r_symbols;
  std::vector<FSymbolRow> f_symbols;
  // (k, sigma) -> dense matrix; absent entries in the file are zero.
  std::map<std::pair<int, int>, Mat2> ebm1;
  std::map<std::pair<int, int>, Mat5> ebm2;
  std::vector<Gate1Row> gate1;
  std::vector<Gate2Row> gate2;
  std::vector<Swap9Row> swap9;
};

inline GoldenData load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixtures: cannot open " + path);
  GoldenData data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    auto bad = [&](const char* what) {
      throw std::runtime_error("fixtures: " + path + ":" + std::to_string(lineno) + ": bad " +
                               what + " record");
    };
    if (tag == "R") {
      RSymbolRow r{};
      double re = 0, im = 0;
      if (!(ss >> r.k >> r.j1 >> r.j2 >> r.j >> re >> im)) bad("R");
      r.value = {re, im};
      data.r_symbols.push_back(r);
    } else if (tag == "F") {
      FSymbolRow f{};
      if (!(ss >> f.k >> f.j1 >> f.j2 >> f.j3 >> f.j >> f.j12 >> f.j23 >> f.value)) bad("F");
      data.f_symbols.push_back(f);
    } else if (tag == "EBM1" || tag == "EBM2") {
      int k = 0, sigma = 0, row = 0, col = 0;
      double re = 0, im = 0;
      if (!(ss >> k >> sigma >> row >> col >> re >> im)) bad("EBM");
      if (tag == "EBM1")
        data.ebm1[{k, sigma}](row, col) = cplx{re, im};
      else
        data.ebm2[{k, sigma}](row, col) = cplx{re, im};
    } else if (tag == "GATE1") {
      Gate1Row g{};
      std::string target;
      if (!(ss >> g.k >> target >> g.status >> g.gauge >> g.word >> g.d)) bad("GATE1");
      g.target = target.at(0);
      data.gate1.push_back(g);
    } else if (tag == "GATE2") {
      Gate2Row g{};
      std::string inv;
      if (!(ss >> g.k >> inv >> g.status >> g.word >> g.d)) bad("GATE2");
      g.inverses = (inv == "inv");
      data.gate2.push_back(g);
    } else if (tag == "SWAP9") {
      Swap9Row s{};
      if (!(ss >> s.k >> s.word >> s.dswap >> s.m11 >> s.du)) bad("SWAP9");
      data.swap9.push_back(s);
    } else {
      bad("tag");
    }
  }
  return data;
}

struct CheckLine {
  enum class Status { ok, fail, skip };
  Status status;
  std::string label;
  double error = 0.0;  // absolute error, or value for bound checks
  std::string note;
};

struct VerifyReport {
  std::vector<CheckLine> lines;
  int ok = 0, failed = 0, skipped = 0;

  bool passed() const { return failed == 0; }

  void add(CheckLine::Status s, std::string label, double err, std::string note = {}) {
    lines.push_back({s, std::move(label), err, std::move(note)});
    if (s == CheckLine::Status::ok)
      ++ok;
    else if (s == CheckLine::Status::fail)
      ++failed;
    else
      ++skipped;
  }

  void check(bool pass, std::string label, double err, std::string note = {}) {
    add(pass ? CheckLine::Status::ok : CheckLine::Status::fail, std::move(label), err,
        std::move(note));
  }

  void print(std::FILE* out) const {
    for (const auto& l : lines) {
      const char* tag = l.status == CheckLine::Status::ok     ? "ok  "
                        : l.status == CheckLine::Status::fail ? "FAIL"
                                                              : "skip";
      std::fprintf(out, "[%s] %-58s %.3e %s\n", tag, l.label.c_str(), l.error, l.note.c_str());
    }
    std::fprintf(out, "verify: %d ok, %d failed, %d skipped\n", ok, failed, skipped);
  }
};

/// Replays every fixture record. Rows marked `damaged` carry source strings
/// that did not survive text extraction of the reference tables; they are
/// reported but not counted against the result.
inline VerifyReport verify_golden(const GoldenData& data) {
  VerifyReport report;
  std::map<int, AnyonModel> models;
  auto model_for = [&](int k) -> AnyonModel& {
    auto it = models.find(k);
    if (it == models.end()) it = models.emplace(k, AnyonModel(k)).first;
    return it->second;
  };

  for (const auto& r : data.r_symbols) {
    const cplx got = model_for(r.k).symbols().r_symbol(r.j1, r.j2, r.j);
    const double err = std::abs(got - r.value);
    report.check(err <= 1e-7,
                 "R k=" + std::to_string(r.k) + " (" + std::to_string(r.j1) + "," +
                     std::to_string(r.j2) + ")->" + std::to_string(r.j),
                 err);
  }
  for (const auto& f : data.f_symbols) {
    const double got =
        model_for(f.k).symbols().f_symbol(f.j1, f.j2, f.j3, f.j, f.j12, f.j23);
    const double err = std::abs(got - f.value);
    report.check(err <= 1e-7,
                 "F k=" + std::to_string(f.k) + " [" + std::to_string(f.j1) +
                     std::to_string(f.j2) + std::to_string(f.j3) + std::to_string(f.j) + ";" +
                     std::to_string(f.j12) + std::to_string(f.j23) + "]",
                 err);
  }

  for (const auto& [key, expected] : data.ebm1) {
    const auto gens = one_qubit_generators(model_for(key.first));
    const double err = gens.sigma[std::size_t(key.second - 1)].max_abs_diff(expected);
    report.check(err <= 1e-7,
                 "EBM1 k=" + std::to_string(key.first) + " sigma" + std::to_string(key.second),
                 err);
  }
  for (const auto& [key, expected] : data.ebm2) {
    const auto gens = two_qubit_generators(model_for(key.first));
    const double err = gens.sigma[std::size_t(key.second - 1)].max_abs_diff(expected);
    report.check(err <= 1e-7,
                 "EBM2 k=" + std::to_string(key.first) + " sigma" + std::to_string(key.second),
                 err);
  }

  // Remaining two-qubit generators, assembled from the quoted one-qubit
  // blocks and R-symbols (direct sums), checked against the implementation.
  for (int k : {5, 6, 7}) {
    const auto s1 = data.ebm1.find({k, 1});
    const auto s2 = data.ebm1.find({k, 2});
    cplx r2{};
    bool have_r2 = false;
    for (const auto& r : data.r_symbols)
      if (r.k == k && r.j1 == 1 && r.j2 == 1 && r.j == 2) {
        r2 = r.value;
        have_r2 = true;
      }
    if (s1 == data.ebm1.end() || s2 == data.ebm1.end() || !have_r2) continue;
    const auto gens = two_qubit_generators(model_for(k));
    const Mat2 id2 = Mat2::identity();
    const Mat5 expected[4] = {
        direct_sum(r2, kron(s1->second, id2)), direct_sum(r2, kron(s2->second, id2)),
        direct_sum(r2, kron(id2, s2->second)), direct_sum(r2, kron(id2, s1->second))};
    const int index[4] = {1, 2, 4, 5};
    for (int i = 0; i < 4; ++i) {
      const double err = gens.sigma[std::size_t(index[i] - 1)].max_abs_diff(expected[i]);
      report.check(err <= 1e-7,
                   "EBM2 k=" + std::to_string(k) + " sigma" + std::to_string(index[i]) +
                       " (direct sum)",
                   err);
    }
  }

  for (const auto& g : data.gate1) {
    const std::string label = "GATE1 k=" + std::to_string(g.k) + " " + g.target;
    if (g.status == "damaged") {
      report.add(CheckLine::Status::skip, label, g.d, "source text damaged in extraction");
      continue;
    }
    const auto gens = one_qubit_generators(model_for(g.k), 1, true);
    Mat2 u = evaluate_braidword(parse_braidword(g.word, 2), gens);
    if (g.gauge == "ref") {
      const Mat2 flip = Mat2::diagonal({1.0, -1.0});
      u = flip * u * flip;
    }
    const Mat2 target = g.target == 'H' ? metrics::hadamard() : metrics::t_gate();
    const double d = metrics::phase_invariant_distance(u, target);
    const double err = std::abs(d - g.d);
    report.check(err <= 1e-6, label, err,
                 g.status == "reconstructed" ? "(reconstructed word)" : "");
  }

  for (const auto& g : data.gate2) {
    const std::string label =
        "GATE2 k=" + std::to_string(g.k) + (g.inverses ? " inv" : " noinv");
    if (g.status == "damaged") {
      report.add(CheckLine::Status::skip, label, g.d, "source text damaged in extraction");
      continue;
    }
    const auto gens = two_qubit_generators(model_for(g.k), g.inverses);
    const Mat5 b = evaluate_braidword(parse_braidword(g.word, 5), gens);
    const double d = metrics::class_distance(split_blocks(b).a, metrics::ClassTarget::cnot());
    // Quoted figures >= 1e-9 reproduce within a factor of two; below that
    // the floating-point floor dominates and the value itself must be tiny.
    const bool pass = g.d >= 1e-9 ? (d >= 0.5 * g.d && d <= 2.0 * g.d) : (d <= 1e-10);
    report.check(pass, label, d,
                 (g.status == "reconstructed" ? std::string("(reconstructed word) ") : "") +
                     "quoted " + std::to_string(g.d));
  }

  for (const auto& s : data.swap9) {
    const auto gens = two_qubit_generators(model_for(s.k), false);
    const Mat5 b = evaluate_braidword(parse_braidword(s.word, 5), gens);
    const double d = metrics::class_distance(split_blocks(b).a, metrics::ClassTarget::swap());
    const auto leak = metrics::leakage_metrics(b);
    const std::string label = "SWAP9 k=" + std::to_string(s.k);
    report.check(d <= 1e-28, label + " d", d);
    report.check(std::abs(leak.m11 - 1.0) <= 1e-10, label + " m11", std::abs(leak.m11 - 1.0));
    report.check(leak.du <= 1e-12, label + " dU", leak.du);
  }

  return report;
}

}  // namespace su2k::fixtures
