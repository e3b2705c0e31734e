#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entcert/rank.hpp"
#include "entcert/scalar.hpp"

namespace entcert {

enum class Verdict { Certified, NotCertifiedAtLevel, SystemTooLarge };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "certified";
    case Verdict::NotCertifiedAtLevel: return "not_certified_at_level";
    case Verdict::SystemTooLarge: return "system_too_large";
  }
  return "?";
}

struct CertificateTarget {
  enum class Kind { REntangled, SchmidtNumberAtLeast, CompletelyEntangled, GenuinelyEntangled };
  Kind kind = Kind::REntangled;
  int value = 1;  // r for REntangled, the lower bound r+1 for SchmidtNumberAtLeast

  static CertificateTarget r_entangled(int r) { return {Kind::REntangled, r}; }
  static CertificateTarget schmidt_number_at_least(int bound) {
    return {Kind::SchmidtNumberAtLeast, bound};
  }
  static CertificateTarget completely_entangled() { return {Kind::CompletelyEntangled, 0}; }
  static CertificateTarget genuinely_entangled() { return {Kind::GenuinelyEntangled, 0}; }
};

/// One linear system examined during a run. `size_short_circuit` marks
/// systems rejected by the necessary size condition (more columns than rows)
/// without any rank computation.
struct SystemReport {
  std::string label;
  int level = 1;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  bool size_short_circuit = false;
  std::optional<RankResult> rank;
};

/// Auditable outcome of a hierarchy run. A Certified verdict asserts the
/// target property; NotCertifiedAtLevel makes no claim in the other
/// direction, since only exhausting the (astronomical) level cap would.
struct Certificate {
  CertificateTarget target;
  Verdict verdict = Verdict::NotCertifiedAtLevel;
  int level = 0;                 // level certified at, or last level attempted
  std::uint64_t level_cap = 0;   // theoretical completeness cap (saturated)
  ArithmeticMode mode = ArithmeticMode::Float;
  double requested_rel_tol = -1.0;  // negative = library default policy
  std::vector<SystemReport> systems;
  std::vector<double> discarded_range_eigenvalues;  // mixed-state range extraction only

  bool certified() const { return verdict == Verdict::Certified; }

  int exit_code() const {
    switch (verdict) {
      case Verdict::Certified: return 0;
      case Verdict::NotCertifiedAtLevel: return 2;
      case Verdict::SystemTooLarge: return 3;
    }
    return 1;
  }
};

}  // namespace entcert
