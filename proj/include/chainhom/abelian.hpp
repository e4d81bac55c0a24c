#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chainhom/presentation.hpp"

namespace chainhom {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Nonzero invariant factors (ascending, each dividing the next) of an
/// integer matrix, computed exactly.
std::vector<BigInt> invariant_factors(const IntMatrix& matrix);

struct H1Group {
  std::size_t betti1 = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
};

/// Exponent-sum vector of a word.
std::vector<std::int64_t> abelianize(const Word& word, std::size_t generator_count);

H1Group h1(const CollapsedPresentation& presentation);
/// H1 of the basepoint's chain component at `scale`.
H1Group h1(const FiniteMetricSpace& space, double scale, PointIndex basepoint = 0);

/// Row-reduced subspace of F_p^n, maintained in reduced echelon form.
class ModPEchelon {
 public:
  ModPEchelon(std::uint64_t modulus, std::size_t dimension);

  std::uint64_t modulus() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return n_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Adds a row (integer coefficients reduced mod p); true when it raised the rank.
  bool add_row(const std::vector<std::int64_t>& row);
  bool contains(const std::vector<std::int64_t>& v) const;
  /// A functional vanishing on the span with nonzero value on v, if v is
  /// outside the span.
  std::optional<std::vector<std::int64_t>> separating_functional(const std::vector<std::int64_t>& v) const;

 private:
  std::vector<std::int64_t> reduce(const std::vector<std::int64_t>& v) const;
  std::int64_t mod(std::int64_t x) const;
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  std::int64_t inv(std::int64_t a) const;

  std::uint64_t p_;
  std::size_t n_;
  std::vector<std::vector<std::int64_t>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_of_;  // column -> row, or n_ when free
};

/// A mod-p functional on original generators that vanishes on every relator
/// and is nonzero on the loop's word: a proof that the loop is not null.
struct Cocycle {
  std::uint64_t modulus = 0;
  std::vector<std::int64_t> values;  // per generator of the presentation
};

std::int64_t evaluate(const Cocycle& cocycle, const Word& word);
/// True when the cocycle vanishes on every relator.
bool is_cocycle(const Cocycle& cocycle, const Presentation& presentation);

/// Primes tried for certificates: a large prime, small primes, then torsion primes.
std::vector<std::uint64_t> certificate_primes(const H1Group& group);

/// Echelon forms of the collapsed relator matrix, one per prime.
std::vector<ModPEchelon> relator_echelons(const CollapsedPresentation& collapsed,
                                          const std::vector<std::uint64_t>& primes);

/// Searches for a cocycle separating `word` from the relators. `extra_rows`
/// are further words (in original generators) the cocycle must vanish on.
std::optional<Cocycle> find_cocycle(const CollapsedPresentation& collapsed,
                                    const std::vector<ModPEchelon>& echelons, const Word& word,
                                    const std::vector<Word>& extra_rows = {});
std::optional<Cocycle> find_cocycle(const Presentation& presentation, const Word& word,
                                    const std::vector<Word>& extra_rows = {});

}  // namespace chainhom
