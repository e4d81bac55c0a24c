#include "chainhom/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace chainhom {

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigInt big_abs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Diagonalizes by row and column operations; returns the nonzero diagonal.
std::vector<BigInt> diagonalize(BigMatrix a) {
  std::vector<BigInt> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry in the remaining block
    std::size_t pr = rows, pc = cols;
    BigInt best = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] != 0 && (best == 0 || big_abs(a[i][j]) < best)) {
          best = big_abs(a[i][j]);
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      const BigInt piv = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const BigInt q = a[i][t] / piv;
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const BigInt q = a[t][j] / piv;
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        // move the smallest remaining entry of row/column t into the pivot
        std::size_t bi = t, bj = t;
        BigInt small = big_abs(a[t][t]);
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] != 0 && big_abs(a[i][t]) < small) {
            small = big_abs(a[i][t]);
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] != 0 && big_abs(a[t][j]) < small) {
            small = big_abs(a[t][j]);
            bi = t;
            bj = j;
          }
        }
        if (bi != t) std::swap(a[t], a[bi]);
        if (bj != t) {
          for (auto& row : a) std::swap(row[t], row[bj]);
        }
      }
    }
    diag.push_back(big_abs(a[t][t]));
    ++t;
  }
  return diag;
}

std::vector<BigInt> normalize_diagonal(std::vector<BigInt> d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const BigInt g = boost::multiprecision::gcd(d[i], d[j]);
      const BigInt l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
  return d;
}

// Sparse elimination on unit pivots; what remains is handed to the dense phase.
struct SparseReducer {
  std::vector<std::map<std::size_t, std::int64_t>> rows;
  std::size_t unit_rank = 0;

  static bool add_scaled(std::map<std::size_t, std::int64_t>& target,
                         const std::map<std::size_t, std::int64_t>& source, std::int64_t factor,
                         std::map<std::size_t, std::int64_t>& out) {
    out = target;
    for (const auto& [col, val] : source) {
      std::int64_t prod = 0, sum = 0;
      if (__builtin_mul_overflow(val, factor, &prod)) return false;
      auto it = out.find(col);
      const std::int64_t cur = it == out.end() ? 0 : it->second;
      if (__builtin_add_overflow(cur, prod, &sum)) return false;
      if (sum == 0) {
        if (it != out.end()) out.erase(it);
      } else {
        out[col] = sum;
      }
    }
    return true;
  }

  void run(std::size_t cols) {
    std::vector<std::set<std::size_t>> col_rows(cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [c, v] : rows[r]) col_rows[c].insert(r);
    }
    std::vector<bool> dead(rows.size(), false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (dead[r] || rows[r].empty()) continue;
        std::size_t pc = cols;
        for (const auto& [c, v] : rows[r]) {
          if (v == 1 || v == -1) {
            pc = c;
            break;
          }
        }
        if (pc == cols) continue;
        const std::int64_t pv = rows[r].at(pc);
        const auto pivot = rows[r];
        const std::vector<std::size_t> others(col_rows[pc].begin(), col_rows[pc].end());
        std::vector<std::pair<std::size_t, std::map<std::size_t, std::int64_t>>> updates;
        bool ok = true;
        for (auto o : others) {
          if (o == r) continue;
          const std::int64_t factor = -rows[o].at(pc) * pv;
          std::map<std::size_t, std::int64_t> updated;
          if (!add_scaled(rows[o], pivot, factor, updated)) {
            ok = false;
            break;
          }
          updates.emplace_back(o, std::move(updated));
        }
        if (!ok) continue;
        for (auto& [o, updated] : updates) {
          for (const auto& [c, v] : rows[o]) col_rows[c].erase(o);
          rows[o] = std::move(updated);
          for (const auto& [c, v] : rows[o]) col_rows[c].insert(o);
        }
        // Row r and column pc now form a unit block: drop both.
        for (const auto& [c, v] : rows[r]) col_rows[c].erase(r);
        rows[r].clear();
        dead[r] = true;
        ++unit_rank;
        progress = true;
      }
    }
  }
};

}  // namespace

std::vector<BigInt> invariant_factors(const IntMatrix& matrix) {
  const std::size_t cols = matrix.empty() ? 0 : matrix[0].size();
  SparseReducer reducer;
  for (const auto& row : matrix) {
    std::map<std::size_t, std::int64_t> sparse;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) sparse[j] = row[j];
    }
    if (!sparse.empty()) reducer.rows.push_back(std::move(sparse));
  }
  reducer.run(cols);

  std::set<std::size_t> live_cols;
  std::vector<const std::map<std::size_t, std::int64_t>*> live_rows;
  for (const auto& row : reducer.rows) {
    if (row.empty()) continue;
    live_rows.push_back(&row);
    for (const auto& [c, v] : row) live_cols.insert(c);
  }
  std::map<std::size_t, std::size_t> col_index;
  for (auto c : live_cols) col_index.emplace(c, col_index.size());
  BigMatrix dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
  for (std::size_t i = 0; i < live_rows.size(); ++i) {
    for (const auto& [c, v] : *live_rows[i]) dense[i][col_index[c]] = v;
  }
  std::vector<BigInt> factors(reducer.unit_rank, BigInt(1));
  auto rest = normalize_diagonal(diagonalize(std::move(dense)));
  factors.insert(factors.end(), rest.begin(), rest.end());
  return normalize_diagonal(std::move(factors));
}

std::vector<std::int64_t> abelianize(const Word& word, std::size_t generator_count) {
  std::vector<std::int64_t> v(generator_count, 0);
  for (auto l : word) v[generator_of(l)] += l < 0 ? -1 : 1;
  return v;
}

H1Group h1(const CollapsedPresentation& presentation) {
  IntMatrix m;
  m.reserve(presentation.relators.size());
  for (const auto& r : presentation.relators) m.push_back(abelianize(r, presentation.generator_count));
  const auto factors = invariant_factors(m);
  H1Group out;
  out.betti1 = presentation.generator_count - factors.size();
  for (const auto& f : factors) {
    if (f == 1) continue;
    if (f > std::numeric_limits<std::int64_t>::max()) {
      throw Error(ErrorKind::ArithmeticOverflow, "torsion coefficient exceeds 64 bits");
    }
    out.torsion.push_back(static_cast<std::int64_t>(f));
  }
  return out;
}

H1Group h1(const FiniteMetricSpace& space, double scale, PointIndex basepoint) {
  return h1(collapse(Presentation::build(space, scale, basepoint)));
}

ModPEchelon::ModPEchelon(std::uint64_t modulus, std::size_t dimension)
    : p_(modulus), n_(dimension), pivot_row_of_(dimension, dimension) {}

std::int64_t ModPEchelon::mod(std::int64_t x) const {
  const auto p = static_cast<std::int64_t>(p_);
  x %= p;
  return x < 0 ? x + p : x;
}

std::int64_t ModPEchelon::mul(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>((static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b)) % p_);
}

std::int64_t ModPEchelon::inv(std::int64_t a) const {
  // Fermat: a^(p-2)
  std::int64_t result = 1, base = a;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::vector<std::int64_t> ModPEchelon::reduce(const std::vector<std::int64_t>& v) const {
  std::vector<std::int64_t> w(n_);
  for (std::size_t j = 0; j < n_; ++j) w[j] = mod(v[j]);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const auto c = pivots_[r];
    if (w[c] == 0) continue;
    const auto f = w[c];
    for (std::size_t j = 0; j < n_; ++j) {
      if (rows_[r][j] != 0) w[j] = mod(w[j] - mul(f, rows_[r][j]));
    }
  }
  return w;
}

bool ModPEchelon::add_row(const std::vector<std::int64_t>& row) {
  auto w = reduce(row);
  std::size_t c = 0;
  while (c < n_ && w[c] == 0) ++c;
  if (c == n_) return false;
  const auto s = inv(w[c]);
  for (auto& x : w) x = mul(x, s);
  for (auto& existing : rows_) {
    if (existing[c] == 0) continue;
    const auto f = existing[c];
    for (std::size_t j = 0; j < n_; ++j) {
      if (w[j] != 0) existing[j] = mod(existing[j] - mul(f, w[j]));
    }
  }
  pivot_row_of_[c] = rows_.size();
  pivots_.push_back(c);
  rows_.push_back(std::move(w));
  return true;
}

bool ModPEchelon::contains(const std::vector<std::int64_t>& v) const {
  const auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](std::int64_t x) { return x == 0; });
}

std::optional<std::vector<std::int64_t>> ModPEchelon::separating_functional(
    const std::vector<std::int64_t>& v) const {
  const auto w = reduce(v);
  std::size_t f = 0;
  while (f < n_ && w[f] == 0) ++f;
  if (f == n_) return std::nullopt;
  // w is zero on pivot columns, so f is free.
  std::vector<std::int64_t> zeta(n_, 0);
  zeta[f] = 1;
  for (std::size_t r = 0; r < rows_.size(); ++r) zeta[pivots_[r]] = mod(-rows_[r][f]);
  return zeta;
}

std::int64_t evaluate(const Cocycle& cocycle, const Word& word) {
  const auto p = static_cast<std::int64_t>(cocycle.modulus);
  std::int64_t sum = 0;
  for (auto l : word) {
    const auto x = cocycle.values.at(generator_of(l));
    sum = (sum + (l < 0 ? p - x : x)) % p;
  }
  return sum;
}

bool is_cocycle(const Cocycle& cocycle, const Presentation& presentation) {
  if (cocycle.values.size() != presentation.generator_count()) return false;
  return std::all_of(presentation.relators().begin(), presentation.relators().end(),
                     [&](const Word& r) { return evaluate(cocycle, r) == 0; });
}

std::vector<std::uint64_t> certificate_primes(const H1Group& group) {
  std::vector<std::uint64_t> primes{2147483647ULL, 2, 3, 5, 7, 11, 13};
  for (auto t : group.torsion) {
    auto x = static_cast<std::uint64_t>(t);
    for (std::uint64_t d = 2; d * d <= x; ++d) {
      if (x % d != 0) continue;
      if (std::find(primes.begin(), primes.end(), d) == primes.end()) primes.push_back(d);
      while (x % d == 0) x /= d;
    }
    if (x > 1 && std::find(primes.begin(), primes.end(), x) == primes.end()) primes.push_back(x);
  }
  return primes;
}

std::vector<ModPEchelon> relator_echelons(const CollapsedPresentation& collapsed,
                                          const std::vector<std::uint64_t>& primes) {
  std::vector<ModPEchelon> out;
  for (auto p : primes) {
    ModPEchelon e(p, collapsed.generator_count);
    for (const auto& r : collapsed.relators) e.add_row(abelianize(r, collapsed.generator_count));
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<Cocycle> find_cocycle(const CollapsedPresentation& collapsed,
                                    const std::vector<ModPEchelon>& echelons, const Word& word,
                                    const std::vector<Word>& extra_rows) {
  const auto g = collapsed.generator_count;
  const auto v = abelianize(collapsed.map(word), g);
  if (std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; })) return std::nullopt;
  for (const auto& base : echelons) {
    std::optional<std::vector<std::int64_t>> zeta;
    if (extra_rows.empty()) {
      zeta = base.separating_functional(v);
    } else {
      ModPEchelon e = base;
      for (const auto& w : extra_rows) e.add_row(abelianize(collapsed.map(w), g));
      zeta = e.separating_functional(v);
    }
    if (!zeta) continue;
    Cocycle c;
    c.modulus = base.modulus();
    const auto p = static_cast<std::int64_t>(c.modulus);
    c.values.assign(collapsed.image.size(), 0);
    for (std::size_t i = 0; i < collapsed.image.size(); ++i) {
      for (auto l : collapsed.image[i]) {
        const auto z = (*zeta)[generator_of(l)];
        c.values[i] = (c.values[i] + (l < 0 ? p - z : z)) % p;
      }
    }
    return c;
  }
  return std::nullopt;
}

std::optional<Cocycle> find_cocycle(const Presentation& presentation, const Word& word,
                                    const std::vector<Word>& extra_rows) {
  const auto collapsed = collapse(presentation);
  const auto group = h1(collapsed);
  return find_cocycle(collapsed, relator_echelons(collapsed, certificate_primes(group)), word, extra_rows);
}

}  // namespace chainhom
