#pragma once

#include <variant>

#include "nuca/engine.hpp"
#include "nuca/report.hpp"

namespace nuca {

/// Composable inverse map. Stages apply first-to-last; an automaton stage
/// evaluates, a block-map stage rewrites its domain window and leaves every
/// other cell unchanged. `flattened` holds a single-automaton form of the
/// same map when one was found.
class InverseObject {
 public:
  using Stage = std::variant<Nuca, BlockMap>;
  InverseObject(std::vector<Stage> stages, std::optional<Nuca> flattened = std::nullopt);

  const std::vector<Stage>& stages() const { return stages_; }
  const std::optional<Nuca>& flattened() const { return flattened_; }
  Configuration apply(const Configuration& state) const;

 private:
  std::vector<Stage> stages_;
  std::optional<Nuca> flattened_;
};

/// Exact injectivity on a finite universe by full enumeration; also reports
/// surjectivity (equivalent for self-maps of a finite set).
PropertyReport injectivity_oracle(const Nuca& n, std::uint64_t budget = default_budget());

/// Enumerates the image patterns on the window. Refutes surjectivity when a
/// window pattern is unreached; a full window image is only evidence, so the
/// verdict stays inconclusive then.
PropertyReport surjectivity_window(const Nuca& n, const FiniteSubset& window,
                                   std::uint64_t budget = default_budget());

struct ReversibilityResult {
  Verdict verdict;  // holds = left inverse found
  std::optional<Nuca> left_inverse;
  int radius = -1;
  std::vector<std::pair<std::string, std::string>> details;
};

/// Searches for a left-inverse automaton with memory ball(r), r <= r_max, by
/// deriving one candidate rule per cell class from window observations.
/// Absence within r_max is inconclusive (a larger memory may still work).
ReversibilityResult reversibility_search(const Nuca& n, int r_max,
                                         std::uint64_t budget = default_budget());

/// Restriction of the automaton to the block: cells outside `active` must
/// hold the projection rule and active cells must read inside the block, so
/// the result is well defined on A^block. Spot-checked against windowed
/// evaluation on random extensions.
BlockMap extract_block_map(const Nuca& n, const FiniteSubset& block, const FiniteSubset& active,
                           std::uint64_t spot_check_seed = 0xb10cu);

struct InvertResult {
  Verdict verdict;  // holds = inverse built, refuted = not injective
  std::optional<InverseObject> inverse;
  std::optional<std::pair<Configuration, Configuration>> collision;
  std::string reason;
  std::vector<std::pair<std::string, std::string>> details;
};

/// Inverts an asymptotically constant automaton: invert the background
/// automaton, compose it away, extract the finite block factor on the
/// perturbed window, and invert that factor by enumeration. A non-injective
/// block factor yields an injectivity refutation instead.
InvertResult perturbation_invert(const Nuca& n, int r_max,
                                 std::uint64_t budget = default_budget());

struct LocalizedPair {
  Nuca p;
  Nuca q;
};

/// Given a left inverse t of s (s may be sparse-singular), produces
/// asymptotically constant p, q that agree with s, t on the window and still
/// satisfy q after p = identity.
LocalizedPair ubs_localize(const Nuca& s, const Nuca& t, const FiniteSubset& window,
                           std::int64_t ubs_search_limit = std::int64_t{1} << 20,
                           std::uint64_t budget = default_budget());

/// Exact surjectivity on finite universes. On infinite universes, enumerates
/// output defects within the defect ball and searches corrections within the
/// correction ball; failures refute within the recorded bounds.
PropertyReport post_surjectivity_check(const Nuca& n, int defect_radius, int correction_radius,
                                       std::uint64_t budget = default_budget());

/// Exact injectivity on finite universes. On infinite universes, enumerates
/// distinct same-background pairs supported in the ball and compares images.
PropertyReport pre_injectivity_check(const Nuca& n, int radius,
                                     std::uint64_t budget = default_budget());

enum class StableProperty { injective, surjective, post_surjective, pre_injective, invertible };

StableProperty parse_stable_property(const std::string& name);
std::string to_string(StableProperty p);

/// Runs the exact finite-universe check on every translated rule assignment;
/// on a finite universe those translates exhaust the orbit closure.
PropertyReport stable_sweep(const Nuca& n, StableProperty property,
                            std::uint64_t budget = default_budget());

/// Whether left after right is the identity. Dispatches to identity_check for
/// constant/asymptotic classes; for the sparse-singular class it checks every
/// cell up to the site-isolation threshold plus representative cells around
/// one isolated site, which covers all remaining cells by translation.
bool verify_left_inverse(const Nuca& left, const Nuca& right,
                         std::uint64_t budget = default_budget());

}  // namespace nuca
