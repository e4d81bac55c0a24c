#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "chainhom/chains.hpp"
#include "chainhom/covering.hpp"
#include "chainhom/metric.hpp"
#include "chainhom/nullity.hpp"
#include "chainhom/oracle.hpp"
#include "chainhom/spectrum.hpp"
#include "chainhom/towers.hpp"

namespace chainhom::io {

using nlohmann::json;

json to_json(const FiniteMetricSpace& space);
/// Accepts {"dist": [[...]], "labels"?: [...]} or {"graph": {"n", "edges": [[i,j,w],...]}}.
FiniteMetricSpace space_from_json(const json& j);

json to_json(const Chain& chain);
Chain chain_from_json(const json& j);

json to_json(const Homotopy& homotopy);
Homotopy homotopy_from_json(const json& j);

json to_json(const Tower& tower);
Tower tower_from_json(const json& j);

json to_json(const NullVerdict& verdict);
json to_json(const OracleResult& result);
json to_json(const CoveringGraph& cover, const FiniteMetricSpace& space);
json to_json(const LiftResult& lift, const CoveringGraph& cover);
json to_json(const RefiningResult& result);
json to_json(const GrefResult& result);
json to_json(const ThreadHomotopy& homotopy);

/// interval_lo,interval_hi,components,betti1,torsion with LF line endings.
std::string spectrum_csv(const CriticalSpectrum& spectrum);
/// stage pair rows, one column per ε.
std::string invlim_csv(const InvlimReport& report);

json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace chainhom::io
