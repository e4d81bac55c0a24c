#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chainhom/abelian.hpp"
#include "chainhom/chains.hpp"
#include "chainhom/presentation.hpp"

namespace chainhom {

struct NullBudget {
  std::size_t cosets = 200000;
  std::size_t visited_words = 1000000;
  std::size_t max_word_length = 64;
};

enum class NullStatus { Null, NonNull, Unknown };

const char* to_string(NullStatus status);

/// Proof of non-nullity: a cocycle on the presentation's generators that
/// vanishes on all relators but not on the loop's word.
struct NullCertificate {
  PointIndex presentation_basepoint = 0;
  Cocycle cocycle;
  std::int64_t value = 0;               // cocycle evaluated on the loop word
  std::vector<std::int64_t> h1_class;   // exponent sums in collapsed generators
};

struct NullVerdict {
  NullStatus status = NullStatus::Unknown;
  Homotopy witness;                          // Null: replays to a single point
  std::optional<NullCertificate> certificate;  // NonNull
  std::size_t budget_spent = 0;              // words visited by the search
  std::string stage;                         // which stage decided
};

/// Cached presentation data for one chain component at one scale.
struct ComponentData {
  Presentation presentation;
  CollapsedPresentation collapsed;
  H1Group group;
  std::vector<ModPEchelon> echelons;
};

/// Nullity decisions at a fixed scale over one space. Presentation data is
/// built lazily per chain component and reused across queries. The space
/// must outlive the engine. Not thread-safe.
class NullityEngine {
 public:
  NullityEngine(const FiniteMetricSpace& space, double scale, NullBudget budget = {});

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  double scale() const noexcept { return scale_; }
  const NullBudget& budget() const noexcept { return budget_; }

  /// Data for the component containing `point`, rooted at its minimum member.
  const ComponentData& component_of(PointIndex point);

  NullVerdict is_null(const Chain& loop);

  /// Cocycle separating the loop from relators and from `extra` loops (all
  /// in the same component), if one is found.
  std::optional<Cocycle> separate(const Chain& loop, const std::vector<Chain>& extra);

 private:
  const FiniteMetricSpace* space_;
  double scale_;
  NullBudget budget_;
  Partition components_;
  std::map<PointIndex, std::unique_ptr<ComponentData>> cache_;
};

NullVerdict is_null(const FiniteMetricSpace& space, double scale, const Chain& loop, NullBudget budget = {});

/// φ: re-expresses a loop (or word) at scale `from` in the presentation at
/// scale `to` >= `from`, both based at `basepoint`.
Word scale_map(const FiniteMetricSpace& space, double from, double to, const Chain& loop, PointIndex basepoint);
Word scale_map(const FiniteMetricSpace& space, double from, double to, const Word& word, PointIndex basepoint);

}  // namespace chainhom
