#include "chainhom/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace chainhom::io {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

template <class F>
auto guarded(F parse) {
  try {
    return parse();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, e.what());
  }
}

}  // namespace

json to_json(const FiniteMetricSpace& space) {
  json j;
  if (!space.labels().empty()) j["labels"] = space.labels();
  j["dist"] = space.matrix();
  if (space.geodesic()) j["geodesic"] = true;
  return j;
}

static FiniteMetricSpace space_from_json_impl(const json& j) {
  require(j.is_object(), "space must be a JSON object");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("graph")) {
    const auto& g = j.at("graph");
    const auto n = g.at("n").get<std::size_t>();
    std::vector<WeightedEdge> edges;
    for (const auto& e : g.at("edges")) {
      require(e.is_array() && e.size() == 3, "graph edge must be [i, j, w]");
      edges.push_back({e[0].get<PointIndex>(), e[1].get<PointIndex>(), e[2].get<double>()});
    }
    return FiniteMetricSpace::from_graph(n, edges, std::move(labels));
  }
  require(j.contains("dist"), "space needs \"dist\" or \"graph\"");
  return FiniteMetricSpace::from_matrix(j.at("dist").get<std::vector<std::vector<double>>>(), std::move(labels),
                                        j.value("geodesic", false));
}

json to_json(const Chain& chain) { return {{"scale", chain.scale}, {"points", chain.points}}; }

static Chain chain_from_json_impl(const json& j) {
  require(j.is_object() && j.contains("scale") && j.contains("points"), "chain needs scale and points");
  return Chain{j.at("scale").get<double>(), j.at("points").get<std::vector<PointIndex>>()};
}

json to_json(const Homotopy& homotopy) {
  json moves = json::array();
  for (const auto& m : homotopy.moves) {
    if (const auto* ins = std::get_if<Insert>(&m)) {
      moves.push_back({{"op", "ins"}, {"pos", ins->pos}, {"pt", ins->point}});
    } else {
      moves.push_back({{"op", "rem"}, {"pos", std::get<Remove>(m).pos}});
    }
  }
  return {{"start", to_json(homotopy.start)}, {"moves", moves}};
}

static Homotopy homotopy_from_json_impl(const json& j) {
  require(j.is_object() && j.contains("start"), "homotopy needs a start chain");
  Homotopy h;
  h.start = chain_from_json_impl(j.at("start"));
  for (const auto& m : j.value("moves", json::array())) {
    const auto op = m.at("op").get<std::string>();
    if (op == "ins") {
      h.moves.push_back(Insert{m.at("pos").get<std::size_t>(), m.at("pt").get<PointIndex>()});
    } else if (op == "rem") {
      h.moves.push_back(Remove{m.at("pos").get<std::size_t>()});
    } else {
      throw Error(ErrorKind::InvalidInput, "unknown move op " + op);
    }
  }
  return h;
}

json to_json(const Tower& tower) {
  json stages = json::array();
  for (const auto& s : tower.stages) stages.push_back(to_json(s));
  return {{"indices", tower.indices}, {"stages", stages}, {"bonds", tower.bonds}};
}

static Tower tower_from_json_impl(const json& j) {
  require(j.is_object() && j.contains("stages"), "tower needs stages");
  Tower t;
  for (const auto& s : j.at("stages")) t.stages.push_back(space_from_json_impl(s));
  if (j.contains("indices")) {
    t.indices = j.at("indices").get<std::vector<double>>();
  } else {
    for (std::size_t i = 0; i < t.stages.size(); ++i) t.indices.push_back(static_cast<double>(i + 1));
  }
  if (j.contains("bonds")) t.bonds = j.at("bonds").get<std::vector<std::vector<PointIndex>>>();
  return t;
}

json to_json(const NullVerdict& verdict) {
  json j{{"status", to_string(verdict.status)}, {"stage", verdict.stage}, {"budget_spent", verdict.budget_spent}};
  if (verdict.status == NullStatus::Null) j["witness"] = to_json(verdict.witness);
  if (verdict.certificate) {
    const auto& c = *verdict.certificate;
    j["certificate"] = {{"presentation_basepoint", c.presentation_basepoint},
                        {"modulus", c.cocycle.modulus},
                        {"cocycle", c.cocycle.values},
                        {"value", c.value},
                        {"h1_class", c.h1_class}};
  }
  return j;
}

json to_json(const OracleResult& result) {
  json j{{"status", to_string(result.status)}, {"states", result.states}};
  if (result.status == OracleStatus::Null) j["witness"] = to_json(result.witness);
  return j;
}

json to_json(const CoveringGraph& cover, const FiniteMetricSpace& space) {
  json vertices = json::array();
  json fibers = json::object();
  json edges = json::array();
  for (VertexId v = 0; v < cover.vertex_count(); ++v) {
    vertices.push_back({{"id", v}, {"point", cover.endpoint(v)}, {"element", cover.elements[cover.element(v)]}});
    for (auto q : cover.points) {
      if (q == cover.endpoint(v)) continue;
      if (auto w = cover.step(space, v, q)) edges.push_back({v, q, *w});
    }
  }
  for (auto p : cover.points) fibers[std::to_string(p)] = cover.fiber(p);
  json j{{"status", to_string(cover.status)},
         {"scale", cover.scale},
         {"basepoint", cover.basepoint()},
         {"group_order", cover.group_order()},
         {"vertices", vertices},
         {"fibers", fibers},
         {"edges", edges}};
  if (cover.status == CoverStatus::Truncated) {
    j["radius"] = cover.radius;
    j["exact"] = cover.exact;
  }
  return j;
}

json to_json(const LiftResult& lift, const CoveringGraph& cover) {
  json vertices = json::array();
  for (auto v : lift.vertices) {
    vertices.push_back({{"id", v}, {"point", cover.endpoint(v)}, {"element", cover.elements[cover.element(v)]}});
  }
  return {{"vertices", vertices}, {"final_vertex", lift.final_vertex}};
}

json to_json(const RefiningResult& result) {
  json j{{"status", to_string(result.status)},
         {"epsilon", result.epsilon},
         {"delta", result.delta},
         {"kappa", result.kappa},
         {"cases", result.cases},
         {"nonnull_cases", result.nonnull_cases},
         {"undecided_cases", result.undecided_cases},
         {"witness_count", result.witnesses.size()}};
  if (result.counterexample) {
    const auto& c = *result.counterexample;
    json cj{{"a", c.a}, {"b", c.b}, {"a_lift", c.a_lift}, {"b_lift", c.b_lift},
            {"lift_distance", c.lift_distance}, {"reason", c.reason}};
    if (c.cocycle) {
      cj["modulus"] = c.cocycle->modulus;
      cj["cocycle"] = c.cocycle->values;
      cj["presentation_basepoint"] = c.presentation_basepoint;
    }
    j["counterexample"] = cj;
  }
  if (result.first_undecided) {
    const auto& u = *result.first_undecided;
    j["first_undecided"] = {{"a", u.a}, {"b", u.b}, {"a_lift", u.a_lift}, {"b_lift", u.b_lift},
                            {"chain", to_json(u.chain)}};
  }
  return j;
}

json to_json(const GrefResult& result) {
  json j{{"certified", result.certified}, {"preimage_diameter", result.preimage_diameter}};
  if (result.certified) {
    j["delta_found"] = result.delta_found;
  } else {
    j["reason"] = result.reason;
  }
  return j;
}

json to_json(const ThreadHomotopy& homotopy) {
  json moves = json::array();
  for (const auto& m : homotopy.moves) {
    if (const auto* ins = std::get_if<ThreadInsert>(&m)) {
      moves.push_back({{"op", "ins"}, {"pos", ins->pos}, {"thread", ins->point}});
    } else {
      moves.push_back({{"op", "rem"}, {"pos", std::get<ThreadRemove>(m).pos}});
    }
  }
  return {{"stage", homotopy.r}, {"depth", homotopy.depth}, {"scale", homotopy.scale},
          {"start", homotopy.start}, {"moves", moves}};
}

namespace {

std::string number(double x) {
  if (std::isinf(x)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string spectrum_csv(const CriticalSpectrum& spectrum) {
  std::ostringstream out;
  out << "interval_lo,interval_hi,components,betti1,torsion\n";
  for (const auto& row : spectrum.rows) {
    std::string torsion;
    for (std::size_t i = 0; i < row.torsion.size(); ++i) {
      if (i > 0) torsion += ' ';
      torsion += std::to_string(row.torsion[i]);
    }
    out << number(row.lo) << ',' << number(row.hi) << ',' << row.components << ',' << row.betti1 << ','
        << torsion << '\n';
  }
  return out.str();
}

std::string invlim_csv(const InvlimReport& report) {
  std::ostringstream out;
  out << "r,t";
  for (double e : report.eps_grid) out << ",eps=" << number(e);
  out << '\n';
  const std::size_t width = report.eps_grid.size();
  for (std::size_t i = 0; width > 0 && i < report.cells.size(); i += width) {
    out << report.cells[i].r << ',' << report.cells[i].t;
    for (std::size_t k = 0; k < width; ++k) out << ',' << to_string(report.cells[i + k].status);
    out << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << content;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FiniteMetricSpace space_from_json(const json& j) { return guarded([&] { return space_from_json_impl(j); }); }
Chain chain_from_json(const json& j) { return guarded([&] { return chain_from_json_impl(j); }); }
Homotopy homotopy_from_json(const json& j) { return guarded([&] { return homotopy_from_json_impl(j); }); }
Tower tower_from_json(const json& j) { return guarded([&] { return tower_from_json_impl(j); }); }

}  // namespace chainhom::io
