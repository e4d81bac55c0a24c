#include "chainhom/chains.hpp"

#include <algorithm>

namespace chainhom {

const char* to_string(MoveFailure reason) {
  switch (reason) {
    case MoveFailure::Endpoint: return "endpoint";
    case MoveFailure::Distance: return "distance";
    case MoveFailure::Position: return "position";
  }
  return "unknown";
}

namespace {

void check_indices(const FiniteMetricSpace& space, const Chain& chain) {
  for (auto p : chain.points) {
    if (p >= space.size()) throw Error(ErrorKind::IndexOutOfRange, "chain point out of range", {p});
  }
}

}  // namespace

std::optional<std::size_t> validate_chain(const FiniteMetricSpace& space, const Chain& chain) {
  if (chain.points.empty()) throw Error(ErrorKind::InvalidInput, "chain has no points");
  check_indices(space, chain);
  for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
    if (!(space(chain.points[i], chain.points[i + 1]) < chain.scale)) return i;
  }
  return std::nullopt;
}

std::optional<MoveFailure> check_move(const FiniteMetricSpace& space, const Chain& chain,
                                      const BasicMove& move) {
  const auto& pts = chain.points;
  const std::size_t len = pts.size();
  const double eps = chain.scale;
  if (const auto* ins = std::get_if<Insert>(&move)) {
    if (ins->point >= space.size()) {
      throw Error(ErrorKind::IndexOutOfRange, "inserted point out of range", {ins->point});
    }
    if (ins->pos > len) return MoveFailure::Position;
    if (ins->pos == 0 && ins->point != pts.front()) return MoveFailure::Endpoint;
    if (ins->pos == len && ins->point != pts.back()) return MoveFailure::Endpoint;
    if (ins->pos > 0 && !(space(pts[ins->pos - 1], ins->point) < eps)) return MoveFailure::Distance;
    if (ins->pos < len && !(space(ins->point, pts[ins->pos]) < eps)) return MoveFailure::Distance;
    return std::nullopt;
  }
  const auto& rem = std::get<Remove>(move);
  if (rem.pos >= len || len < 2) return MoveFailure::Position;
  if (rem.pos == 0) return pts[1] == pts[0] ? std::nullopt : std::optional(MoveFailure::Endpoint);
  if (rem.pos == len - 1) {
    return pts[len - 2] == pts[len - 1] ? std::nullopt : std::optional(MoveFailure::Endpoint);
  }
  if (!(space(pts[rem.pos - 1], pts[rem.pos + 1]) < eps)) return MoveFailure::Distance;
  return std::nullopt;
}

void apply_move_unchecked(std::vector<PointIndex>& points, const BasicMove& move) {
  if (const auto* ins = std::get_if<Insert>(&move)) {
    points.insert(points.begin() + static_cast<std::ptrdiff_t>(ins->pos), ins->point);
  } else {
    points.erase(points.begin() + static_cast<std::ptrdiff_t>(std::get<Remove>(move).pos));
  }
}

Chain apply_move(const FiniteMetricSpace& space, const Chain& chain, const BasicMove& move) {
  if (auto failure = check_move(space, chain, move)) {
    throw Error(ErrorKind::IllegalMove, to_string(*failure));
  }
  Chain out = chain;
  apply_move_unchecked(out.points, move);
  return out;
}

BasicMove inverse_move(const Chain& before, const BasicMove& move) {
  if (const auto* ins = std::get_if<Insert>(&move)) return Remove{ins->pos};
  const auto pos = std::get<Remove>(move).pos;
  return Insert{pos, before.points.at(pos)};
}

Chain concatenate(const Chain& first, const Chain& second) {
  if (first.scale != second.scale) throw Error(ErrorKind::ScaleMismatch, "concatenated scales differ");
  if (first.points.empty() || second.points.empty() || first.back() != second.front()) {
    throw Error(ErrorKind::JunctionMismatch, "first chain must end where the second starts");
  }
  Chain out = first;
  out.points.insert(out.points.end(), second.points.begin() + 1, second.points.end());
  return out;
}

Chain reverse(const Chain& chain) {
  Chain out = chain;
  std::reverse(out.points.begin(), out.points.end());
  return out;
}

HomotopyCheck verify_homotopy(const FiniteMetricSpace& space, const Homotopy& homotopy) {
  HomotopyCheck result;
  if (validate_chain(space, homotopy.start)) {
    result.ok = false;
    result.reason = MoveFailure::Distance;
    result.final_chain = homotopy.start;
    return result;
  }
  Chain current = homotopy.start;
  for (std::size_t i = 0; i < homotopy.moves.size(); ++i) {
    if (auto failure = check_move(space, current, homotopy.moves[i])) {
      result.ok = false;
      result.step = i;
      result.reason = *failure;
      result.final_chain = std::move(current);
      return result;
    }
    apply_move_unchecked(current.points, homotopy.moves[i]);
  }
  result.final_chain = std::move(current);
  return result;
}

Chain map_chain(const std::vector<PointIndex>& map, const Chain& chain) {
  Chain out{chain.scale, {}};
  out.points.reserve(chain.points.size());
  for (auto p : chain.points) out.points.push_back(map.at(p));
  return out;
}

Homotopy map_homotopy(const std::vector<PointIndex>& map, const Homotopy& homotopy) {
  Homotopy out;
  out.start = map_chain(map, homotopy.start);
  // Moves keep their positions: the image chain is the pointwise image of the
  // source chain at every step, so only point labels change.
  out.moves.reserve(homotopy.moves.size());
  for (const auto& move : homotopy.moves) {
    if (const auto* ins = std::get_if<Insert>(&move)) {
      out.moves.push_back(Insert{ins->pos, map.at(ins->point)});
    } else {
      out.moves.push_back(move);
    }
  }
  return out;
}

}  // namespace chainhom
