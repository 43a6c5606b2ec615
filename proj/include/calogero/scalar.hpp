#pragma once

#include <concepts>

#include "calogero/bigfloat.hpp"
#include "calogero/nuscalar.hpp"
#include "calogero/rational.hpp"

namespace calogero {

/// Coefficient field of states, operators and matrices: Rat for a fixed
/// coupling, NuScalar when ν stays symbolic.
template <class S>
concept Scalar = std::regular<S> && requires(const S a, const S b, long k) {
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a / b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::convertible_to<std::string>;
  S(k);
};

static_assert(Scalar<Rat>);
static_assert(Scalar<NuScalar>);

}  // namespace calogero
