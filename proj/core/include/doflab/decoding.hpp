#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doflab/scheme.hpp"

namespace doflab {

struct ReceiverReport {
  std::size_t receiver = 0;
  std::vector<std::string> decodable;    // certified target symbols
  std::vector<std::string> undecodable;  // targets that fail, for diagnostics
  bool all_targets = false;              // joint rank criterion holds
};

struct DecodeReport {
  std::string scheme;
  Mode mode = Mode::exact;
  std::vector<ReceiverReport> receivers;
  bool all_pass = false;
};

/// Generic decodability certificate for receiver k: the subset of its
/// declared targets whose unit row lies in the row space of G_k, i.e. the
/// maximal D with rank(G_k) = rank(G_k without D's columns) + |D|. Exact
/// arithmetic, so certificates have no false positives.
std::vector<std::string> oracle_decodable(const Transcript<QComplex>& tr,
                                          std::size_t k);

DecodeReport oracle_report(const Transcript<QComplex>& tr);

/// Per-stream zero-forcing noise amplification ||w_i||^2 for receiver k's
/// targets, computed once per transcript; SINR_i(P_T) = P_T / ||w_i||^2 under
/// unit-variance observation noise and the scheme's equal power split.
/// std::nullopt when no zero-forcer exists.
struct ZfGains {
  std::vector<std::string> symbols;
  std::vector<double> noise_amp;  // ||w_i||^2 per target stream
};
std::optional<ZfGains> zf_gains(const Transcript<CDouble>& tr, std::size_t k);

/// Receiver k's zero-forcing rate in bits per slot at transmit power p_t.
/// Throws DegenerateChannel when the zero-forcer is infeasible (scheme bug or
/// degenerate draw).
double zf_rate(const Transcript<CDouble>& tr, std::size_t k, double p_t);

std::string report_to_json(const DecodeReport& report);

}  // namespace doflab
