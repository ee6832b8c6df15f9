#pragma once

// Machine checks of the structural results: unisolvency, dimension counts and
// kernel triviality (exact rational rank), commuting interpolants, BGG-type
// identities and a discrete inf-sup estimate.

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "alfeld/dof_numbering.hpp"

namespace alfeld {

struct CheckEntry {
    std::string name;
    bool pass = false;
    double value = 0.0;     ///< the gated quantity
    std::string detail;     ///< measured quantities, human readable
    std::string certifies;  ///< statement the check is evidence for
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckEntry> entries;

    bool pass() const;
    void add(CheckEntry e) { entries.push_back(std::move(e)); }
    void append(const VerificationReport& other);
    /// Aligned table with details.
    std::string text() const;
    /// One `name status value` line per check.
    std::string summary() const;
};

// ---------------------------------------------------------------------------
// Exact counts on the reference N-simplex.

struct DimensionCounts {
    int ndim = 0;
    int raw_sym = 0;          ///< (N+1)^2 N(N+1)/2 nodal unknowns
    int continuity_rank = 0;  ///< rank of internal normal continuity (symmetric layout)
    int sigma_dim = 0;        ///< raw_sym - continuity_rank
    int bdm_dim = 0;          ///< matrix-valued BDM1 on the split
    int skew_dim = 0;         ///< discontinuous P1 skew fields on the split
    int bdm_skew_rank = 0;    ///< rank of [continuity; skw = 0] in the full layout
};

DimensionCounts dimension_counts(int ndim);
/// (N + 1/2) N (N + 1)
int sigma_dimension_formula(int ndim);
CheckEntry check_dimension_formula(int ndim);

/// Exact dimension of a 3D stress variant on the reference tetrahedron.
int exact_variant_dimension(StressVariant variant);
CheckEntry check_exact_dimension(StressVariant variant);

struct KernelResult {
    int unknowns = 0;
    int rows = 0;
    int exact_rank = 0;
    int float_rank = -1;  ///< -1 when not computed
    int nullity() const { return unknowns - exact_rank; }
};

/// Continuity + zero boundary trace + zero divergence on the reference split.
KernelResult kernel_rank(int ndim, bool float_cross_check);
CheckEntry check_kernel_trivial(int ndim);

/// Random tetrahedra with shape quality 6|T|/diam^3 above this value are accepted.
constexpr double kMinTetQuality = 0.05;
CheckEntry check_unisolvency(StressVariant variant, int ntrials, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Commuting interpolants on a mesh, with random degree-3 polynomial stresses.

/// max_k |(div(Pi w - w), v_k)| / max_k |(div w, v_k)| over all test functions
/// of the method's displacement space; worst over `nfields` random fields.
CheckEntry check_commuting_weak(const Discretization& d, int nfields, std::mt19937_64& rng);
/// max over subtets |div(Pi w - w)| / |div w| for w with div w in W_h (affine
/// part plus a divergence-free inc field).
CheckEntry check_commuting_strong(const Discretization& d, int nfields, std::mt19937_64& rng);
VerificationReport check_commuting(int cube_n, int nfields, std::uint64_t seed);

// ---------------------------------------------------------------------------
// BGG-type identities on random polynomial fields.

VerificationReport check_bgg(int ndim, int ntrials, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Discrete inf-sup constant.

/// Smallest beta with B N^{-1} B^T y = beta^2 L y, N = stress L2 + div Gram,
/// L = displacement mass (dense; small meshes only).
double estimate_infsup(const Discretization& d);
/// beta_h at n = 1 and 2 for one method; passes if both exceed 1e-3 and the
/// n = 2 value is at least 80% of the n = 1 value.
CheckEntry check_infsup(MethodId method);

struct VerifyOptions {
    std::vector<int> ndims{2, 3, 4};
    int trials = 100;
    int bgg_fields = 200;
    int commuting_fields = 20;
    std::uint64_t seed = 12345;
    bool infsup = true;
};

VerificationReport run_verification(const VerifyOptions& options);

}  // namespace alfeld
