#pragma once

// Global degrees of freedom for the five methods, the per-cell element data
// they need, discrete fields on the split mesh and the canonical interpolants.
//
// Unknown order: stress block, then displacement block, then rotations
// (weakly symmetric method only).

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "alfeld/local_spaces.hpp"
#include "alfeld/mesh.hpp"

namespace alfeld {

enum class MethodId { jkm, p0, reduced, reduced2, weaksym };
enum class DisplacementSpace { vh, wh, rigid, constant };

std::string to_string(MethodId m);
std::string to_string(DisplacementSpace d);
/// Accepts jkm, p0, reduced, reduced2, weaksym; throws InvalidArgument otherwise.
MethodId parse_method(const std::string& s);

struct MethodConfig {
    MethodId id = MethodId::jkm;
    /// Displacement space of the weakly symmetric method (W_h or V_h).
    DisplacementSpace weaksym_disp = DisplacementSpace::wh;
    /// The skew part of the extended compliance is skew_scale / (2 mu).
    double skew_scale = 1.0;
};

std::string describe(const MethodConfig& m);
/// Stress variant of a symmetric-stress method; throws for weaksym.
StressVariant stress_variant(MethodId m);
DisplacementSpace displacement_space(const MethodConfig& m);
/// Displacement unknowns per macro cell: 12, 12, 6 or 3.
int displacement_dim(DisplacementSpace d);

constexpr int kRotationsPerCell = 48;  ///< P1 skew fields on 4 subtets: 4 x 4 x 3
constexpr int kBdmPerSubtet = 36;

struct DofTable {
    MethodConfig method;
    int n_stress = 0;
    int n_disp = 0;
    int n_rot = 0;
    /// Global stress index of every local stress function of a macro cell.
    std::vector<std::vector<int>> cell_stress;
    std::vector<std::vector<int>> cell_disp;
    std::vector<std::vector<int>> cell_rot;

    int size() const { return n_stress + n_disp + n_rot; }
    int disp_offset() const { return n_stress; }
    int rot_offset() const { return n_stress + n_disp; }
};

DofTable build_dof_map(const SplitMesh& mesh, const MethodConfig& method);

/// Everything a method needs on a fixed mesh: DOF table, geometry and local bases.
struct Discretization {
    std::shared_ptr<const SplitMesh> mesh;
    MethodConfig method;
    DofTable table;
    std::vector<MacroGeometry> geometry;
    /// Symmetric-stress methods: 96 x nshape nodal basis per macro cell.
    std::vector<Eigen::MatrixXd> stress_raw;
    /// Weakly symmetric method: 36 x 36 BDM1 basis per fine cell (rows v*9 + i*3 + j).
    std::vector<Eigen::MatrixXd> bdm_basis;
    double min_dof_sigma = 0.0;
    double max_dof_condition = 0.0;

    int num_cells() const { return mesh->num_cells(); }
    /// 36 x nloc per subtet: full-matrix vertex values of the local stress functions.
    std::array<Eigen::MatrixXd, 4> stress_vertex_values(int cell) const;
    /// 12 x ndisp per subtet: vertex values of the local displacement functions.
    std::array<Eigen::MatrixXd, 4> disp_vertex_values(int cell) const;
    /// 36 x 48 per subtet: vertex values of the rotation functions (weaksym).
    std::array<Eigen::MatrixXd, 4> rot_vertex_values(int cell) const;
};

std::shared_ptr<const Discretization> build_discretization(std::shared_ptr<const SplitMesh> mesh,
                                                           const MethodConfig& method);

// ---------------------------------------------------------------------------
// Piecewise-linear fields on the split mesh, stored by vertex values per fine cell.

struct StressField {
    std::vector<std::array<Mat3, 4>> v;
    Mat3 value(int fine_cell, const std::array<double, 4>& bary) const;
};

struct DisplacementField {
    std::vector<std::array<Vec3, 4>> v;
    Vec3 value(int fine_cell, const std::array<double, 4>& bary) const;
};

/// 12 x dim per subtet: vertex values of the basis of a displacement space on one macro cell.
std::array<Eigen::MatrixXd, 4> displacement_vertex_values(const MacroGeometry& geo, DisplacementSpace space);

StressField make_stress_field(const Discretization& d, const Eigen::VectorXd& stress);
/// Field of cell-major coefficients (cell * dim + local) of a displacement space.
DisplacementField make_displacement_field(const Discretization& d, DisplacementSpace space, const Eigen::VectorXd& disp);
/// Field of the method's own displacement unknowns.
DisplacementField make_displacement_field(const Discretization& d, const Eigen::VectorXd& disp);
/// Rotation field (skew matrices) of the weakly symmetric method.
StressField make_rotation_field(const Discretization& d, const Eigen::VectorXd& rot);

/// Canonical interpolant (Pi, Pi^R or Pi^R2, by method) of a
/// smooth symmetric field; returns global stress coefficients.
Eigen::VectorXd canonical_interpolant(const Discretization& d, const MatrixField& field, int facet_degree = 5,
                                      int cell_degree = 6);

/// Elementwise L2 projection of a vector field onto the method's displacement
/// space, or onto W_h when `target` is DisplacementSpace::wh.
Eigen::VectorXd l2_projection(const Discretization& d, DisplacementSpace target, const VectorField& f, int degree = 6);

/// Per fine cell constant divergence of a stress field.
std::vector<Vec3> subtet_divergence(const Discretization& d, const StressField& s);

}  // namespace alfeld
