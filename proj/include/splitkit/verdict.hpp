#pragma once

#include <optional>
#include <string>

namespace splitkit {

enum class Certainty { CertifiedTrue, CertifiedFalse, Unresolved };

// Three-valued finite-radius answer. Certified states are monotone under
// radius growth; Unresolved may later resolve either way.
struct Verdict {
  Certainty state = Certainty::Unresolved;
  int radius = 0;
  std::optional<std::string> witness;

  static Verdict yes(int r, std::string w = {}) {
    Verdict v{Certainty::CertifiedTrue, r, std::nullopt};
    if (!w.empty()) v.witness = std::move(w);
    return v;
  }
  static Verdict no(int r, std::string w = {}) {
    Verdict v{Certainty::CertifiedFalse, r, std::nullopt};
    if (!w.empty()) v.witness = std::move(w);
    return v;
  }
  static Verdict unresolved(int r, std::string w = {}) {
    Verdict v{Certainty::Unresolved, r, std::nullopt};
    if (!w.empty()) v.witness = std::move(w);
    return v;
  }

  bool certified_true() const { return state == Certainty::CertifiedTrue; }
  bool certified_false() const { return state == Certainty::CertifiedFalse; }
  bool unresolved_state() const { return state == Certainty::Unresolved; }

  const char* name() const {
    switch (state) {
      case Certainty::CertifiedTrue:
        return "CertifiedTrue";
      case Certainty::CertifiedFalse:
        return "CertifiedFalse";
      default:
        return "Unresolved";
    }
  }
};

}  // namespace splitkit
