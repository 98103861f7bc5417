#include "invset/hilbertbits.hpp"

#include <algorithm>
#include <stdexcept>

#include "invset/errors.hpp"

namespace invset {

namespace {

std::size_t length_of(unsigned order) {
  if (order > kMaxOrder) throw std::invalid_argument("string order exceeds " + std::to_string(kMaxOrder));
  return std::size_t{1} << order;
}

std::size_t positive_mod(long long value, std::size_t modulus) {
  const auto m = static_cast<long long>(modulus);
  return static_cast<std::size_t>(((value % m) + m) % m);
}

void check_weight(const Rational& w) {
  if (w.sign() < 0 || w > Rational(1)) throw std::invalid_argument("weight " + w.str() + " outside [0, 1]");
}

std::size_t block_size(unsigned order, const Rational& fraction) {
  const Rational size = fraction * Rational(Integer(1) << order);
  if (!size.is_integer()) {
    throw NotRepresentable("block of " + fraction.str() + " of 2^" + std::to_string(order) +
                           " elements is not integral");
  }
  return size.numerator().get_ui();
}

void fill(std::vector<Symbol>& out, std::size_t n, Symbol s) { out.insert(out.end(), n, s); }

}  // namespace

BitString::BitString(unsigned order, std::vector<Symbol> symbols) : order_(order), symbols_(std::move(symbols)) {
  if (symbols_.size() != length_of(order)) {
    throw std::invalid_argument("bit string of order " + std::to_string(order) + " needs " +
                                std::to_string(length_of(order)) + " symbols");
  }
}

BitString BitString::filled(unsigned order, Symbol s) {
  return BitString(order, std::vector<Symbol>(length_of(order), s));
}

BitString BitString::parse(std::string_view bits) {
  if (bits.empty() || (bits.size() & (bits.size() - 1)) != 0) {
    throw std::invalid_argument("bit string length must be a power of two");
  }
  std::vector<Symbol> symbols;
  symbols.reserve(bits.size());
  for (char c : bits) {
    if (c == '1') symbols.push_back(Symbol::A);
    else if (c == '0') symbols.push_back(Symbol::NotA);
    else throw std::invalid_argument("bit strings use only 0 and 1");
  }
  unsigned order = 0;
  while ((std::size_t{1} << order) < bits.size()) ++order;
  return BitString(order, std::move(symbols));
}

std::size_t BitString::count(Symbol s) const {
  return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), s));
}

std::string BitString::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (auto s : symbols_) out.push_back(s == Symbol::A ? '1' : '0');
  return out;
}

std::string BitString::run_length() const {
  std::string out;
  std::size_t i = 0;
  while (i < symbols_.size()) {
    std::size_t j = i;
    while (j < symbols_.size() && symbols_[j] == symbols_[i]) ++j;
    if (!out.empty()) out.push_back(',');
    out += (symbols_[i] == Symbol::A ? "1x" : "0x") + std::to_string(j - i);
    i = j;
  }
  return out;
}

BitString zeta(const BitString& s, long long power) {
  return rotate_block(s, 0, s.size(), power);
}

BitString complement(const BitString& s) {
  std::vector<Symbol> out(s.symbols().begin(), s.symbols().end());
  for (auto& x : out) x = flip(x);
  return BitString(s.order(), std::move(out));
}

BitString rotate_block(const BitString& s, std::size_t offset, std::size_t length, long long power) {
  if (offset + length > s.size()) throw std::invalid_argument("rotation block exceeds the string");
  std::vector<Symbol> out(s.symbols().begin(), s.symbols().end());
  if (length > 0) {
    const std::size_t k = positive_mod(power, length);
    // zeta moves the last element to the front: a right rotation by k.
    auto first = out.begin() + static_cast<std::ptrdiff_t>(offset);
    auto last = first + static_cast<std::ptrdiff_t>(length);
    std::rotate(first, last - static_cast<std::ptrdiff_t>(k), last);
  }
  return BitString(s.order(), std::move(out));
}

std::pair<BitString, BitString> split_halves(const BitString& s) {
  if (s.order() == 0) throw std::invalid_argument("cannot split a single-symbol string");
  const auto half = static_cast<std::ptrdiff_t>(s.size() / 2);
  const auto sym = s.symbols();
  return {BitString(s.order() - 1, std::vector<Symbol>(sym.begin(), sym.begin() + half)),
          BitString(s.order() - 1, std::vector<Symbol>(sym.begin() + half, sym.end()))};
}

BitString concat(const BitString& a, const BitString& b) {
  if (a.order() != b.order()) throw std::invalid_argument("concatenation needs strings of equal order");
  std::vector<Symbol> out(a.symbols().begin(), a.symbols().end());
  out.insert(out.end(), b.symbols().begin(), b.symbols().end());
  return BitString(a.order() + 1, std::move(out));
}

Rational born_probability(const BitString& s) {
  return Rational(Integer(static_cast<unsigned long>(s.count(Symbol::A))),
                  Integer(static_cast<unsigned long>(s.size())));
}

BitString build_one_qubit(const OneQubitSpec& spec) {
  const std::size_t length = length_of(spec.order);
  if (spec.weight > length) {
    throw std::invalid_argument("weight " + std::to_string(spec.weight) + " exceeds 2^" +
                                std::to_string(spec.order));
  }
  if (spec.phase_steps >= length) throw std::invalid_argument("phase steps must lie in [0, 2^N)");
  std::vector<Symbol> symbols;
  symbols.reserve(length);
  fill(symbols, spec.weight, Symbol::A);
  fill(symbols, length - spec.weight, Symbol::NotA);
  return zeta(BitString(spec.order, std::move(symbols)), static_cast<long long>(spec.phase_steps));
}

OneQubitSpec decode_one_qubit(const BitString& s) {
  OneQubitSpec spec{s.order(), s.count(Symbol::A), 0};
  if (spec.weight == 0 || spec.weight == s.size()) return spec;
  const std::size_t n = s.size();
  std::size_t starts = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == Symbol::A && s[(i + n - 1) % n] == Symbol::NotA) {
      ++starts;
      spec.phase_steps = i;
    }
  }
  if (starts != 1) throw std::invalid_argument("A symbols do not form a single cyclic run");
  return spec;
}

// ---------------------------------------------------------------------------

TwoQubitState::TwoQubitState(BitString sa, BitString sb, TwoQubitLayout layout)
    : sa_(std::move(sa)), sb_(std::move(sb)), layout_(std::move(layout)) {
  if (sa_.order() != sb_.order()) throw std::invalid_argument("paired strings must share the order");
}

namespace {

// Strings for "head" (split by the outer weight) and "tail" (four inner blocks).
struct PairedLayout {
  BitString outer;
  BitString inner;
  std::size_t head;
};

PairedLayout lay_out(unsigned order, const Rational& outer, const Rational& first_inner,
                     const Rational& second_inner) {
  check_weight(outer);
  check_weight(first_inner);
  check_weight(second_inner);
  const std::size_t length = length_of(order);
  const std::size_t head = block_size(order, outer);
  const std::size_t b0 = block_size(order, outer * first_inner);
  const std::size_t b2 = block_size(order, (Rational(1) - outer) * second_inner);
  std::vector<Symbol> o, in;
  o.reserve(length);
  in.reserve(length);
  fill(o, head, Symbol::A);
  fill(o, length - head, Symbol::NotA);
  fill(in, b0, Symbol::A);
  fill(in, head - b0, Symbol::NotA);
  fill(in, b2, Symbol::A);
  fill(in, length - head - b2, Symbol::NotA);
  return {BitString(order, std::move(o)), BitString(order, std::move(in)), head};
}

}  // namespace

TwoQubitState build_two_qubit_formA(unsigned order, const std::array<Rational, 3>& weights,
                                    const std::array<long long, 3>& phase_steps) {
  auto [sa, sb, head] = lay_out(order, weights[0], weights[1], weights[2]);
  sb = rotate_block(sb, 0, head, phase_steps[1]);
  sb = rotate_block(sb, head, sb.size() - head, phase_steps[2]);
  sa = zeta(sa, phase_steps[0]);
  sb = zeta(sb, phase_steps[0]);
  return TwoQubitState(std::move(sa), std::move(sb), TwoQubitLayout{TwoQubitForm::A, weights, phase_steps});
}

TwoQubitState build_two_qubit_formB(unsigned order, const std::array<Rational, 3>& weights,
                                    const std::array<long long, 3>& phase_steps) {
  // Outer split on S_b by c6; S_a carries the c4 / c5 blocks.
  auto [sb, sa, head] = lay_out(order, weights[2], weights[0], weights[1]);
  sa = rotate_block(sa, 0, head, phase_steps[0]);
  sa = rotate_block(sa, head, sa.size() - head, phase_steps[1]);
  sa = zeta(sa, phase_steps[2]);
  sb = zeta(sb, phase_steps[2]);
  return TwoQubitState(std::move(sa), std::move(sb), TwoQubitLayout{TwoQubitForm::B, weights, phase_steps});
}

std::array<Rational, 3> formB_weights_from_formA(const std::array<Rational, 3>& w) {
  const Rational one(1);
  const Rational g0 = w[0] * w[1];
  const Rational g1 = w[0] * (one - w[1]);
  const Rational g2 = (one - w[0]) * w[2];
  const Rational c6 = g0 + g2;
  const Rational c4 = c6.is_zero() ? one : g0 / c6;
  const Rational c5 = c6 == one ? one : g1 / (one - c6);
  return {c4, c5, c6};
}

TwoQubitState convert_formA_to_formB(const TwoQubitState& state) {
  const auto& layout = state.layout();
  if (layout.form != TwoQubitForm::A) throw std::invalid_argument("state is not in form A");
  const auto weights = formB_weights_from_formA(layout.weights);
  for (const auto& w : weights) {
    if (!is_dyadic(w)) {
      throw NotRepresentable("form-B weight " + w.str() + " is not finitely describable");
    }
  }
  const auto& p = layout.phase_steps;
  const long long phi4 = p[0];
  const long long phi6 = p[1];
  const long long phi5 = p[0] + p[2] - phi6;
  return build_two_qubit_formB(state.order(), weights, {phi4, phi5, phi6});
}

Rational joint_frequency(const TwoQubitState& state, Symbol a, Symbol b) {
  const auto sa = state.sa().symbols();
  const auto sb = state.sb().symbols();
  unsigned long hits = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] == a && sb[i] == b) ++hits;
  }
  return Rational(Integer(hits), Integer(static_cast<unsigned long>(sa.size())));
}

std::array<Rational, 4> joint_frequencies(const TwoQubitState& state) {
  const auto sa = state.sa().symbols();
  const auto sb = state.sb().symbols();
  std::array<unsigned long, 4> hits{};
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const int ia = sa[i] == Symbol::A ? 0 : 2;
    const int ib = sb[i] == Symbol::A ? 0 : 1;
    ++hits[static_cast<std::size_t>(ia + ib)];
  }
  const Integer total(static_cast<unsigned long>(sa.size()));
  return {Rational(Integer(hits[0]), total), Rational(Integer(hits[1]), total),
          Rational(Integer(hits[2]), total), Rational(Integer(hits[3]), total)};
}

Rational correlation(const TwoQubitState& state) {
  const auto f = joint_frequencies(state);
  return f[0] + f[3] - f[1] - f[2];
}

TwoQubitState anti_correlated(const TwoQubitState& state) {
  return TwoQubitState(state.sa(), complement(state.sb()), state.layout());
}

TwoQubitState build_bell_layout(unsigned order, const Rational& cosine) {
  if (cosine < Rational(-1) || cosine > Rational(1)) {
    throw std::invalid_argument("cosine " + cosine.str() + " outside [-1, 1]");
  }
  const Rational half(Integer(1), Integer(2));
  const Rational c2 = (Rational(1) + cosine) * half;
  return build_two_qubit_formA(order, {half, c2, Rational(1) - c2});
}

// ---------------------------------------------------------------------------

BitString pauli_apply(int axis, const BitString& s) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("Pauli axis must be 1, 2 or 3");
  if (s.order() < 1) throw std::invalid_argument("Pauli action needs N >= 1");
  auto [h1, h2] = split_halves(s);
  switch (axis) {
    case 1:
      return concat(h2, h1);
    case 3:
      return concat(h1, complement(h2));
    default: {
      if (s.order() < 3) throw std::invalid_argument("sigma2 needs N >= 3 for its quarter-turn phase");
      const long long q = 1ll << (s.order() - 3);
      return concat(zeta(complement(h2), q), zeta(h1, q));
    }
  }
}

SpinorPair pauli_apply(int axis, const SpinorPair& pair) {
  return SpinorPair{pauli_apply(axis, pair.upper), pauli_apply(axis, pair.lower)};
}

}  // namespace invset
