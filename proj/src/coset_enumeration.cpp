#include "chainhom/coset_enumeration.hpp"

#include <deque>

namespace chainhom {

namespace {

class Enumerator {
 public:
  Enumerator(std::size_t gens, std::size_t max_cosets) : cols_(2 * gens), max_(max_cosets) { new_coset(); }

  bool overflow() const noexcept { return overflow_; }

  std::size_t inv(std::size_t col) const { return col ^ 1U; }

  std::int64_t new_coset() {
    if (defined_ >= max_) {
      overflow_ = true;
      return -1;
    }
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<std::int64_t>(parent_.size()));
    ++defined_;
    return static_cast<std::int64_t>(table_.size() - 1);
  }

  bool live(std::int64_t c) const { return parent_[c] == c; }

  std::int64_t rep(std::int64_t c) {
    std::int64_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      auto next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  bool define(std::int64_t c, std::size_t col) {
    const auto d = new_coset();
    if (d < 0) return false;
    table_[c][col] = d;
    table_[d][inv(col)] = c;
    return true;
  }

  void merge(std::int64_t a, std::int64_t b, std::deque<std::int64_t>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    std::deque<std::int64_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      const auto e = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        const auto f = table_[e][x];
        if (f < 0) continue;
        table_[f][inv(x)] = -1;
        const auto e1 = rep(e);
        const auto f1 = rep(f);
        if (table_[e1][x] >= 0) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][inv(x)] >= 0) {
          merge(e1, table_[f1][inv(x)], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][inv(x)] = e1;
        }
      }
    }
  }

  // Scans relator w from coset c, defining cosets as needed.
  bool scan_and_fill(std::int64_t c, const std::vector<std::size_t>& w) {
    std::int64_t f = c, b = c;
    std::int64_t i = 0, j = static_cast<std::int64_t>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && table_[b][inv(w[j])] >= 0) b = table_[b][inv(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][inv(w[i])] = f;
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  std::optional<CosetTable> run(std::size_t gens, const std::vector<Word>& relators) {
    std::vector<std::vector<std::size_t>> rels;
    for (const auto& r : relators) {
      std::vector<std::size_t> cols;
      for (auto l : r) cols.push_back(CosetTable::column(l));
      rels.push_back(std::move(cols));
    }
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(table_.size()); ++c) {
      for (const auto& r : rels) {
        if (!live(c)) break;
        if (!scan_and_fill(c, r)) return std::nullopt;
      }
      if (!live(c)) continue;
      for (std::size_t x = 0; x < cols_; ++x) {
        if (table_[c][x] < 0 && !define(c, x)) return std::nullopt;
      }
    }
    // Compact live cosets.
    std::vector<std::int64_t> index(table_.size(), -1);
    CosetTable out;
    out.generator_count = gens;
    out.defined = defined_;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(static_cast<std::int64_t>(c))) continue;
      index[c] = static_cast<std::int64_t>(out.table.size());
      out.table.emplace_back();
    }
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (index[c] < 0) continue;
      auto& row = out.table[index[c]];
      row.resize(cols_);
      for (std::size_t x = 0; x < cols_; ++x) {
        row[x] = table_[c][x] < 0 ? -1 : index[rep(table_[c][x])];
      }
    }
    return out;
  }

 private:
  std::size_t cols_;
  std::size_t max_;
  std::size_t defined_ = 0;
  bool overflow_ = false;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> parent_;
};

}  // namespace

std::optional<CosetTable> enumerate_cosets(std::size_t generator_count, const std::vector<Word>& relators,
                                           std::size_t max_cosets) {
  Enumerator e(generator_count, max_cosets);
  return e.run(generator_count, relators);
}

}  // namespace chainhom
