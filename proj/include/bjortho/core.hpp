#ifndef BJORTHO_CORE_HPP_
#define BJORTHO_CORE_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bjortho {

template <typename Real>
using CVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using COperatorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using CVector = CVectorT<double>;
using COperator = COperatorT<double>;

enum class FieldTag { kReal, kComplex };

enum class ErrorCode {
  kZeroVector,
  kZeroOperator,
  kNonSmoothExponent,
  kInvalidExponent,
  kDimensionMismatch,
  kZeroDenominator,
  kEmptyAttainment,
  kCertificateNotFound,
  kDirectOrthFailed,
  kUnknownSuite,
  kInvalidConfig,
  kParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Exponent of an l_p norm, 1 <= p <= inf.
class PExponent {
 public:
  explicit PExponent(double p);
  static PExponent infinity() { return PExponent(std::numeric_limits<double>::infinity()); }

  double value() const { return p_; }
  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }
  // Differentiable norm away from the origin: 1 < p < inf.
  bool smooth() const { return p_ > 1.0 && !is_infinite(); }
  // Hoelder conjugate p/(p-1); 1 <-> inf.
  PExponent conjugate() const;

  void require_smooth(const char* where) const;

  friend bool operator==(const PExponent&, const PExponent&) = default;

 private:
  double p_;
};

// alpha = e^{i theta}, theta in [0, pi).
class Direction {
 public:
  explicit Direction(double theta);

  double theta() const { return theta_; }
  Complex as_complex() const { return alpha_; }

  // Grid theta_k = k pi / n, k = 0..n-1.
  static Direction grid(int k, int n);

 private:
  double theta_;
  Complex alpha_;
};

struct NumericConfig {
  double attain_tol = 1e-6;
  double orth_tol = 1e-7;
  int n_alpha = 64;
  int n_starts = 32;
  int max_iter = 500;
  // Resolution per axis of the deterministic sphere sweep used for n = 2.
  int sphere_grid = 48;
  std::uint64_t seed = 0x5eed;

  void validate() const;
};

// Counter-based generator: every draw is a pure function of (key, counter).
// Streams split off by hashing the parent key with a stream index, so a
// multi-start run with start index k is reproducible in any order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  Rng split(std::uint64_t stream) const { return Rng(key_, stream); }

  std::uint64_t next_u64();
  // Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian();
  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t z);

FieldTag field_of(const CVector& x);
FieldTag field_of(const COperator& t);

// Uniform-ish random direction rescaled to unit l_p norm.
CVector sample_unit_vector(int dim, FieldTag field, const PExponent& p, Rng& rng);

// Representative of the phase circle {e^{i phi} x}: the first coordinate of
// largest modulus becomes real and positive.
CVector canonical_phase(const CVector& x);

inline constexpr double kPi = std::numbers::pi;

}  // namespace bjortho

#endif  // BJORTHO_CORE_HPP_
