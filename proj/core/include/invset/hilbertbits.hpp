#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invset/exactnum.hpp"

namespace invset {

/// Abstract two-symbol alphabet; a/not-a, b/not-b and 1/0 are all views of it.
enum class Symbol : std::uint8_t { NotA = 0, A = 1 };

constexpr Symbol flip(Symbol s) { return s == Symbol::A ? Symbol::NotA : Symbol::A; }

/// Largest supported string order; 2^24 symbols.
inline constexpr unsigned kMaxOrder = 24;

/**
 * Sample space of length 2^N behind a Hilbert vector. Immutable; all
 * operations return new strings.
 */
class BitString {
 public:
  BitString(unsigned order, std::vector<Symbol> symbols);

  static BitString filled(unsigned order, Symbol s);
  /// "1" = A, "0" = NotA; the length must be a power of two.
  static BitString parse(std::string_view bits);

  unsigned order() const { return order_; }
  std::size_t size() const { return symbols_.size(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  std::size_t count(Symbol s) const;

  /// Compact 0/1 text, A = 1.
  std::string str() const;
  /// Runs as "1x3,0x1,..." (symbol x length).
  std::string run_length() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  unsigned order_;
  std::vector<Symbol> symbols_;
};

/// Cyclic permutation: zeta{a_1 .. a_L} = {a_L a_1 .. a_{L-1}}, applied
/// `power` times (negative powers rotate the other way). zeta^(2^N) = id.
BitString zeta(const BitString& s, long long power);

BitString complement(const BitString& s);

/// Cyclically rotates s[offset, offset + length) by `power` positions in the
/// zeta orientation, leaving the rest untouched.
BitString rotate_block(const BitString& s, std::size_t offset, std::size_t length, long long power);

/// First and second halves (order N-1 each); needs N >= 1.
std::pair<BitString, BitString> split_halves(const BitString& s);

/// a || b; both operands must have the same order.
BitString concat(const BitString& a, const BitString& b);

/// count(A) / 2^N.
Rational born_probability(const BitString& s);

struct OneQubitSpec {
  unsigned order = 0;             // N
  std::uint64_t weight = 0;       // M': number of A symbols, cos^2(theta/2) = M'/2^N
  std::uint64_t phase_steps = 0;  // n: phi = 2 pi n / 2^N
  friend bool operator==(const OneQubitSpec&, const OneQubitSpec&) = default;
};

/// First M' symbols A, the rest NotA, then zeta^n.
BitString build_one_qubit(const OneQubitSpec& spec);

/// Inverse of build_one_qubit on its image. Strings fixed by zeta (all A or
/// all NotA) decode with phase 0. Throws std::invalid_argument if the A
/// symbols do not form a single cyclic run.
OneQubitSpec decode_one_qubit(const BitString& s);

// ---------------------------------------------------------------------------
// Two qubits

/**
 * Form A: cos(t1/2)|a>|psi_b(t2,p2)> + e^{i p1} sin(t1/2)|~a>|psi_b(t3,p3)>.
 * Form B: cos(t6/2)|psi_a(t4,p4)>|b> + e^{i p6} sin(t6/2)|psi_a(t5,p5)>|~b>.
 */
enum class TwoQubitForm { A, B };

struct TwoQubitLayout {
  TwoQubitForm form = TwoQubitForm::A;
  /// Form A: cos^2 of theta1/2, theta2/2, theta3/2.
  /// Form B: cos^2 of theta4/2, theta5/2, theta6/2.
  std::array<Rational, 3> weights;
  /// Form A: phi1 (joint), phi2 (first block), phi3 (second block).
  /// Form B: phi4 (first block), phi5 (second block), phi6 (joint).
  /// Rotation amounts in string positions.
  std::array<long long, 3> phase_steps{0, 0, 0};
};

class TwoQubitState {
 public:
  TwoQubitState(BitString sa, BitString sb, TwoQubitLayout layout);

  unsigned order() const { return sa_.order(); }
  const BitString& sa() const { return sa_; }
  const BitString& sb() const { return sb_; }
  const TwoQubitLayout& layout() const { return layout_; }

 private:
  BitString sa_;
  BitString sb_;
  TwoQubitLayout layout_;
};

/// Form-A layout. S_a: 2^N c1 symbols A then NotA. S_b: four blocks of sizes
/// 2^N c1 c2 (B), 2^N c1 (1-c2) (NotB), 2^N (1-c1) c3 (B), 2^N (1-c1)(1-c3)
/// (NotB). Block phases are applied first, the joint phase last.
/// Throws NotRepresentable when a block size is not an integer.
TwoQubitState build_two_qubit_formA(unsigned order, const std::array<Rational, 3>& weights,
                                    const std::array<long long, 3>& phase_steps = {0, 0, 0});

/// Form-B layout, the mirror image with the roles of S_a and S_b exchanged
/// (weights c4, c5, c6; phases phi4, phi5 block-wise, phi6 joint).
TwoQubitState build_two_qubit_formB(unsigned order, const std::array<Rational, 3>& weights,
                                    const std::array<long long, 3>& phase_steps = {0, 0, 0});

/// Form-B weights that reproduce the joint probabilities of a form-A state:
/// c6 = g0 + g2, c4 = g0 / c6, c5 = g1 / (1 - c6). Degenerate blocks
/// (c6 = 0 or 1) take weight 1.
std::array<Rational, 3> formB_weights_from_formA(const std::array<Rational, 3>& formA_weights);

/// Throws NotRepresentable when a derived form-B weight is not dyadic.
/// Phases map as phi4 = phi1, phi6 = phi2, phi5 = phi1 + phi3 - phi6.
TwoQubitState convert_formA_to_formB(const TwoQubitState& state);

/// Fraction of positions i with (S_a[i], S_b[i]) = (a, b).
Rational joint_frequency(const TwoQubitState& state, Symbol a, Symbol b);

/// (A,B), (A,NotB), (NotA,B), (NotA,NotB): the squared amplitudes g0..g3.
std::array<Rational, 4> joint_frequencies(const TwoQubitState& state);

/// p(same) - p(different).
Rational correlation(const TwoQubitState& state);

/// The same state with S_b complemented; negates the correlation.
TwoQubitState anti_correlated(const TwoQubitState& state);

/// Bell-type layout: theta1 = pi/2, theta3 = pi - theta2, cos(theta2) = cosine.
/// Counting gives correlation +cosine.
TwoQubitState build_bell_layout(unsigned order, const Rational& cosine);

// ---------------------------------------------------------------------------
// Spinor pairs

struct SpinorPair {
  BitString upper;  // S_a
  BitString lower;  // S_b
  friend bool operator==(const SpinorPair&, const SpinorPair&) = default;
};

/**
 * Pauli matrix `axis` (1, 2, 3) acting on the two halves of a string, read as
 * a 2-vector. -1 is the symbol complement and i is the quarter turn
 * zeta^(2^(N-3)) of a half string:
 *   sigma1: h1 || h2  ->  h2 || h1
 *   sigma2: h1 || h2  ->  zeta^q(~h2) || zeta^q(h1),  q = 2^(N-3)
 *   sigma3: h1 || h2  ->  h1 || ~h2
 * sigma2 needs N >= 3; the others N >= 1.
 */
BitString pauli_apply(int axis, const BitString& s);

/// Applies the same Pauli action to both Weyl components.
SpinorPair pauli_apply(int axis, const SpinorPair& pair);

}  // namespace invset
