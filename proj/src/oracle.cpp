#include "chainhom/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace chainhom {

const char* to_string(OracleStatus status) {
  switch (status) {
    case OracleStatus::Null: return "Null";
    case OracleStatus::NonNull: return "NonNull";
    case OracleStatus::Exhausted: return "Exhausted";
  }
  return "Exhausted";
}

OracleResult bfs_homotopy_oracle(const FiniteMetricSpace& space, double scale, const Chain& loop,
                                 std::size_t max_chain_len, std::size_t max_states) {
  if (!loop.is_loop()) throw Error(ErrorKind::NotALoop, "oracle needs a loop");
  if (validate_chain(space, loop)) throw Error(ErrorKind::InvalidInput, "not a chain at this scale");
  OracleResult result;
  result.witness.start = loop;
  if (loop.size() == 1) {
    result.status = OracleStatus::Null;
    result.states = 1;
    return result;
  }

  using Points = std::vector<PointIndex>;
  struct Visit {
    Points parent;
    BasicMove move;
  };
  std::map<Points, Visit> seen;
  std::deque<Points> queue;
  seen.emplace(loop.points, Visit{{}, Remove{0}});
  queue.push_back(loop.points);

  auto trace = [&](Points end) {
    std::vector<BasicMove> moves;
    while (end != loop.points) {
      const auto& v = seen.at(end);
      moves.push_back(v.move);
      end = v.parent;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
  };

  while (!queue.empty()) {
    Points cur = std::move(queue.front());
    queue.pop_front();
    Chain chain{scale, cur};
    std::vector<BasicMove> moves;
    for (std::size_t pos = 0; pos < cur.size(); ++pos) moves.push_back(Remove{pos});
    if (cur.size() < max_chain_len) {
      for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
        for (PointIndex p = 0; p < space.size(); ++p) moves.push_back(Insert{pos, p});
      }
    }
    for (const auto& m : moves) {
      if (check_move(space, chain, m)) continue;
      Points next = cur;
      apply_move_unchecked(next, m);
      if (!seen.emplace(next, Visit{cur, m}).second) continue;
      if (next.size() == 1) {
        result.status = OracleStatus::Null;
        result.states = seen.size();
        result.witness.moves = trace(next);
        return result;
      }
      if (seen.size() > max_states) {
        result.states = seen.size();
        return result;
      }
      queue.push_back(std::move(next));
    }
  }
  result.status = OracleStatus::NonNull;
  result.states = seen.size();
  return result;
}

}  // namespace chainhom
