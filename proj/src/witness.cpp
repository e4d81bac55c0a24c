#include "witness.hpp"

#include <algorithm>

namespace chainhom::detail {

WitnessBuilder::WitnessBuilder(const FiniteMetricSpace& space, const Presentation& presentation, Chain start)
    : space_(&space), presentation_(&presentation), current_(start) {
  homotopy_.start = std::move(start);
  base_ = current_.front();
}

void WitnessBuilder::insert(std::size_t pos, PointIndex point) {
  const BasicMove move = Insert{pos, point};
  if (auto failure = check_move(*space_, current_, move)) {
    throw Error(ErrorKind::NotAHomotopy, std::string("witness insert failed: ") + to_string(*failure), {pos, point});
  }
  apply_move_unchecked(current_.points, move);
  homotopy_.moves.push_back(move);
}

void WitnessBuilder::remove(std::size_t pos) {
  const BasicMove move = Remove{pos};
  if (auto failure = check_move(*space_, current_, move)) {
    throw Error(ErrorKind::NotAHomotopy, std::string("witness remove failed: ") + to_string(*failure), {pos});
  }
  apply_move_unchecked(current_.points, move);
  homotopy_.moves.push_back(move);
}

void WitnessBuilder::dedupe() {
  for (std::size_t i = current_.points.size(); i-- > 1;) {
    if (i < current_.points.size() && current_.points[i] == current_.points[i - 1]) remove(i);
  }
}

void WitnessBuilder::shorten() {
  const double eps = current_.scale;
  bool changed = true;
  while (changed) {
    changed = false;
    dedupe();
    auto& pts = current_.points;
    for (std::size_t i = 1; i + 1 < pts.size();) {
      if ((*space_)(pts[i - 1], pts[i + 1]) < eps) {
        remove(i);
        changed = true;
        if (i > 1) --i;
      } else {
        ++i;
      }
    }
  }
  dedupe();
}

void WitnessBuilder::grow_spur(std::size_t pos, const std::vector<PointIndex>& path) {
  for (std::size_t k = 1; k < path.size(); ++k) {
    const std::size_t at = pos + k - 1;  // chain[at] == path[k-1]
    insert(at + 1, path[k - 1]);
    insert(at + 1, path[k]);
  }
}

void WitnessBuilder::contract_palindrome(std::size_t s, std::size_t e) {
  while (e > s) {
    const std::size_t m = (s + e) / 2;
    remove(m);
    remove(m);
    e -= 2;
  }
}

std::size_t WitnessBuilder::piece_length(const std::array<PointIndex, 2>& e) const {
  return presentation_->depth(e[0]) + presentation_->depth(e[1]) + 1;
}

std::size_t WitnessBuilder::junction_offset(std::size_t j) const {
  std::size_t off = presentation_->depth(base_);
  for (std::size_t k = 0; k < j; ++k) off += piece_length(pieces_[k]);
  return off;
}

void WitnessBuilder::to_normal_form() {
  dedupe();
  const auto pts = current_.points;
  for (std::size_t i = pts.size(); i-- > 0;) {
    auto path = presentation_->tree_path(pts[i]);
    std::reverse(path.begin(), path.end());
    grow_spur(i, path);
  }
  pieces_.clear();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) pieces_.push_back({pts[i], pts[i + 1]});
  reduce_pieces();
}

void WitnessBuilder::reduce_pieces() {
  std::vector<std::array<PointIndex, 2>> stack;
  std::size_t off = presentation_->depth(base_);  // junction after the stack
  std::vector<std::size_t> offsets;               // junction before each stacked piece
  for (const auto& piece : pieces_) {
    const auto len = piece_length(piece);
    if (presentation_->is_tree_edge(piece[0], piece[1])) {
      contract_palindrome(off, off + len);
      continue;
    }
    if (!stack.empty() && stack.back()[0] == piece[1] && stack.back()[1] == piece[0]) {
      const auto start = offsets.back();
      contract_palindrome(start, off + len);
      off = start;
      stack.pop_back();
      offsets.pop_back();
      continue;
    }
    stack.push_back(piece);
    offsets.push_back(off);
    off += len;
  }
  pieces_ = std::move(stack);
}

void WitnessBuilder::insert_triangle(std::size_t junction, const std::array<PointIndex, 3>& t) {
  const auto [p, q, r] = t;
  const std::size_t o = junction_offset(junction);
  grow_spur(o, presentation_->tree_path(p));
  const std::size_t at = o + presentation_->depth(p);
  insert(at + 1, p);
  insert(at + 1, q);
  insert(at + 2, r);
  auto up_r = presentation_->tree_path(r);
  std::reverse(up_r.begin(), up_r.end());
  grow_spur(at + 2, up_r);
  auto up_q = presentation_->tree_path(q);
  std::reverse(up_q.begin(), up_q.end());
  grow_spur(at + 1, up_q);
  const std::array<std::array<PointIndex, 2>, 3> added{{{p, q}, {q, r}, {r, p}}};
  pieces_.insert(pieces_.begin() + static_cast<std::ptrdiff_t>(junction), added.begin(), added.end());
  reduce_pieces();
}

void WitnessBuilder::finish() {
  if (!pieces_.empty()) throw Error(ErrorKind::NotAHomotopy, "word not reduced to the identity");
  contract_palindrome(0, current_.points.size() - 1);
}

Word WitnessBuilder::word() const {
  Word w;
  for (const auto& piece : pieces_) {
    if (auto l = presentation_->edge_letter(piece[0], piece[1])) w.push_back(*l);
  }
  return w;
}

Homotopy WitnessBuilder::take() { return std::move(homotopy_); }

}  // namespace chainhom::detail
