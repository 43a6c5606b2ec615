#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace calogero {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivideByZero : public Error {
 public:
  DivideByZero() : Error("division by the zero scalar") {}
};

/// A rational function was evaluated at a root of its denominator.
class PoleError : public Error {
 public:
  explicit PoleError(std::string denominator)
      : Error("pole: denominator " + denominator + " vanishes"), denominator_(std::move(denominator)) {}
  const std::string& denominator() const noexcept { return denominator_; }

 private:
  std::string denominator_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidMode : public Error {
 public:
  InvalidMode(std::size_t mode, std::size_t modes)
      : Error("mode index " + std::to_string(mode) + " out of range for " + std::to_string(modes) + " modes") {}
};

class InvalidModePair : public Error {
 public:
  explicit InvalidModePair(std::size_t mode)
      : Error("exchange needs two distinct modes, got " + std::to_string(mode) + " twice") {}
};

/// A basis or degree exceeded the configured guard.
class BasisTooLarge : public Error {
 public:
  BasisTooLarge(const std::string& what, std::size_t size, std::size_t limit)
      : Error(what + " of size " + std::to_string(size) + " exceeds the limit " + std::to_string(limit)),
        size_(size) {}
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
};

class ZeroPhi : public Error {
 public:
  explicit ZeroPhi(std::size_t k)
      : Error("structure function vanishes at n = " + std::to_string(k)), index_(k) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(std::size_t sweeps)
      : Error("Jacobi iteration did not converge in " + std::to_string(sweeps) + " sweeps") {}
};

/// The working coupling is a pole of the fitted expansion.
class ZeroPivot : public Error {
 public:
  ZeroPivot(std::string nu, std::size_t degree)
      : Error("expansion is singular at nu = " + nu + " (degree " + std::to_string(degree) + ")"),
        nu_(std::move(nu)),
        degree_(degree) {}
  const std::string& nu() const noexcept { return nu_; }
  std::size_t degree() const noexcept { return degree_; }

 private:
  std::string nu_;
  std::size_t degree_;
};

class Inconsistent : public Error {
 public:
  explicit Inconsistent(const std::string& where) : Error("inconsistent linear system: " + where) {}
};

class UnknownRelation : public Error {
 public:
  explicit UnknownRelation(const std::string& name) : Error("unknown relation '" + name + "'") {}
};

class NotNormalOrdered : public Error {
 public:
  NotNormalOrdered() : Error("product of operator expressions is not normally ordered") {}
};

}  // namespace calogero
