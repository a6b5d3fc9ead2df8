// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "conelat/types.hpp"

namespace conelat {

/// PROVEN comes only from closed-form or generator-pair methods; sampling can
/// yield REFUTED or NO_COUNTEREXAMPLE but never PROVEN.
enum class Verdict { Proven, Refuted, NoCounterexample };

enum class Method { ClosedForm, GeneratorPairs, Sampled };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proven: return "PROVEN";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::NoCounterexample: return "NO_COUNTEREXAMPLE";
  }
  return "?";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed_form";
    case Method::GeneratorPairs: return "generator_pairs";
    case Method::Sampled: return "sampled";
  }
  return "?";
}

template <typename Scalar>
struct Certificate {
  Verdict verdict{};
  Method method{};
  std::optional<std::pair<Vector<Scalar>, Vector<Scalar>>> witness;  // present iff REFUTED
  std::size_t samples_used = 0;
  std::optional<std::uint64_t> seed;

  static Certificate proven(Method m, std::size_t samples = 0) {
    return Certificate{Verdict::Proven, m, std::nullopt, samples, std::nullopt};
  }
  static Certificate refuted(Method m, Vector<Scalar> a, Vector<Scalar> b,
                             std::size_t samples = 0,
                             std::optional<std::uint64_t> seed = std::nullopt) {
    return Certificate{Verdict::Refuted, m,
                       std::make_pair(std::move(a), std::move(b)), samples, seed};
  }
  static Certificate no_counterexample(std::size_t samples,
                                       std::optional<std::uint64_t> seed = std::nullopt) {
    return Certificate{Verdict::NoCounterexample, Method::Sampled, std::nullopt, samples, seed};
  }
};

}  // namespace conelat
