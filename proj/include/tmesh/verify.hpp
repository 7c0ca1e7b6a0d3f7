#pragma once

#include "tmesh/anchors.hpp"
#include "tmesh/mesh.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tmesh::verify {

// ---- linear independence ----

struct RankResult {
    std::size_t anchors = 0;
    std::size_t rank = 0;
    bool independent = false;
    bool stable = true;               // same verdict for every threshold in [1e-10, 1e-6]
    std::vector<double> singular;     // descending
    std::size_t rows = 0;
};

// Evaluation matrix at (p_k+1)^d Gauss points of every Bezier element (the
// boxes between consecutive distinct knots of all anchors), so a vanishing
// combination must vanish identically.
RankResult linear_independence_rank(const TMesh& mesh, double rel_threshold = 1e-8);
// same, with an explicit list of anchor indices as columns (repeats allowed)
RankResult rank_of_columns(const TMesh& mesh, const AnchorTable& table, const std::vector<std::size_t>& cols,
                           double rel_threshold = 1e-8);
std::size_t numerical_rank(const std::vector<double>& singular, double rel_threshold);

// ---- partition of unity ----

// parametric box, per direction the p_k-th full-slice knot from either end
struct ParamBox {
    std::vector<double> lo, hi;
    bool empty() const;
};
ParamBox unity_region(const TMesh& mesh);
double partition_of_unity(const TMesh& mesh, int samples, std::uint64_t seed);

// ---- random meshes ----

enum class Filter { None, Sgas, Wgas, Aas, Sdc };

struct GenOptions {
    int dim = 2;
    std::vector<int> degrees;  // empty: drawn from 1..3 per direction
    int cells = 3;             // initial active cells per direction
    int width = 4;             // their index width
    int max_steps = 40;
    Filter filter = Filter::None; // refinements that break the property are undone
};

struct GeneratedMesh {
    std::uint64_t seed = 0;
    TMesh mesh;
    int rejected = 0; // NonIntegerMidpoint or filter rejections
};

GeneratedMesh random_mesh(std::uint64_t seed, const GenOptions& opt);

// Mixed corpus: the seed picks the dimension (2 or 3) and the step filter
// (none, SGAS, WGAS, AAS, SDC in turn), so every class is well represented.
GenOptions corpus_options(std::uint64_t seed);
std::vector<GeneratedMesh> corpus(std::uint64_t first_seed, int count);
// WGAS-filtered, dimension alternating with the seed
GenOptions wgas_options(std::uint64_t seed);
std::vector<GeneratedMesh> wgas_corpus(std::uint64_t first_seed, int count);

// refinement log as cell-centre points, so it replays after entries are removed
struct PointRefinement {
    std::vector<Rat> point;
    int dir = 0;
};
std::vector<PointRefinement> point_log(const TMesh& mesh);
// applies what still applies; skipped entries are counted
TMesh replay_points(const TMesh& initial, const std::vector<PointRefinement>& log, int* skipped = nullptr);

// greedy removal of log entries while `keep` stays true
TMesh shrink(const TMesh& mesh, const std::function<bool(const TMesh&)>& keep);

// ---- oracles ----

// overlap by exhaustive search over the common vector's length and both offsets
bool overlap_bruteforce(const KnotVector& v1, const KnotVector& v2);

// ---- cross-checks ----

struct CheckSummary {
    int meshes = 0;
    int applicable = 0;  // meshes where the hypothesis held
    int failures = 0;
    std::vector<std::string> messages;
    std::vector<std::uint64_t> failing_seeds;
};

// AAS == SDC
CheckSummary crosscheck_aas_sdc(const std::vector<GeneratedMesh>& corpus);
// SGAS => AAS and ATJ_i within GTJ_i
CheckSummary crosscheck_sgas_aas(const std::vector<GeneratedMesh>& corpus);

struct Candidate {
    std::uint64_t seed = 0;
    TMesh mesh;      // shrunk
    std::string witness;
};

struct ConjectureReport {
    int meshes = 0;
    int wgas = 0;
    std::vector<Candidate> candidates;
    int replay_failures = 0;
};
// WGAS meshes that are not WDC; logged, never a failure
// `options` must be the generator options each seed was built with, for the replay check
ConjectureReport conjecture_wgas_wdc(const std::vector<GeneratedMesh>& corpus,
                                     const std::function<GenOptions(std::uint64_t)>& options);

// ---- property checks; each returns violations found ----

// applicable counts valid (x, y) pairs; 0 when no hyperplane is partly in the skeleton
CheckSummary property_separating_tjunction(const TMesh& mesh, int probes, std::uint64_t seed);
CheckSummary property_projection_dichotomy(const TMesh& mesh);   // WGAS meshes
CheckSummary property_sgas_overlap(const TMesh& mesh);           // SGAS meshes
CheckSummary property_child_anchors(const TMesh& before, const TMesh& after, int j);
// the above on consecutive 3D WGAS meshes where both satisfy the three-direction
// assumption, until `steps` refinements have been checked; applicable counts steps
CheckSummary property_child_anchors_on_steps(std::uint64_t first_seed, int steps);

} // namespace tmesh::verify
