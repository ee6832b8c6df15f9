#pragma once

// Local spaces on one Alfeld-split macro tetrahedron: the stress spaces
// (42 / 24 / 12 shape functions), their degrees of freedom, the rigid-motion
// operators P_T, I_T and the postprocessing space S_h(T).

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "alfeld/constraints.hpp"
#include "alfeld/mesh.hpp"

namespace alfeld {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using MatrixField = std::function<Mat3(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

enum class StressVariant { full, reduced, reduced2 };

std::string to_string(StressVariant v);
/// 42, 24 or 12.
int stress_dim(StressVariant v);
/// Facet DOFs per macro facet: 9, 6 or 3.
int facet_dof_count(StressVariant v);
/// Interior DOFs per macro cell: 6 for the full variant, else 0.
int cell_dof_count(StressVariant v);

constexpr int kRawSize = 96;  ///< 4 subtets x 4 vertex slots x 6 symmetric components

/// Symmetric component index of entry (i, j), order 00,01,02,11,12,22.
int sym_index(int i, int j);

/// Geometry of a macro tetrahedron and its Alfeld split.
struct MacroGeometry {
    int cell = -1;
    std::array<Vec3, 4> p;
    Vec3 z;
    double volume = 0.0;
    double diameter = 0.0;
    Mat3 jac_inv;  ///< macro barycentric map: lambda_{1..3} = jac_inv (x - p0)

    std::array<std::array<Vec3, 4>, 4> sub_vertex;    ///< [s][v]
    std::array<double, 4> sub_volume{};
    std::array<std::array<Vec3, 4>, 4> grad_lambda;   ///< [s][v], on subtet s
    std::array<Vec3, 4> sub_centroid;
    Eigen::Matrix4d centroid_bary;  ///< (K, j) = lambda_j(x_K)

    /// Macro facets, indexed by the opposite local vertex m.
    std::array<int, 4> facet_id{-1, -1, -1, -1};
    std::array<Vec3, 4> facet_normal;  ///< unit, global orientation
    std::array<double, 4> facet_area{};
    std::array<std::array<int, 3>, 4> facet_slots;  ///< local vertices of facet m in ascending global order

    std::array<double, 4> macro_bary(const Vec3& x) const;
    /// Subtet containing x (largest minimum subtet barycentric coordinate).
    int locate_subtet(const Vec3& x) const;
    std::array<double, 4> sub_bary(int s, const Vec3& x) const;

    SplitGeometry<double> split_geometry() const;
};

/// Geometry of macro cell `cell` of a split mesh (facet normals follow the global orientation rule).
MacroGeometry macro_geometry(const SplitMesh& mesh, int cell);
/// Geometry of a standalone tetrahedron with outward normals and local vertex ordering.
MacroGeometry macro_geometry(const std::array<Vec3, 4>& verts);

enum class DofKind { facet_p1, facet_normal_p1, facet_rigid, facet_constant, cell_integral };

/// One degree of freedom: either the facet moment int_F (omega n) . g, with g
/// the P1 vector field with values `g` at the facet vertices (ascending global
/// order), or the cell integral of the (i, j) entry.
struct DofDescriptor {
    DofKind kind = DofKind::facet_p1;
    int local_facet = -1;
    int index = 0;  ///< functional index within its entity
    std::array<Vec3, 3> g;
    int comp_i = -1;
    int comp_j = -1;
};

std::vector<DofDescriptor> dof_descriptors(const MacroGeometry& geo, StressVariant variant);

/// DOF functionals as rows over the 96 raw coefficients (exact for piecewise-linear fields).
Eigen::MatrixXd dof_matrix(const MacroGeometry& geo, const std::vector<DofDescriptor>& dofs);

/// DOF functionals applied to a smooth symmetric field by quadrature.
Eigen::VectorXd dof_functionals(const MacroGeometry& geo, const std::vector<DofDescriptor>& dofs,
                                const MatrixField& field, int facet_degree = 5, int cell_degree = 6);

/// Raw constraint rows defining the variant inside the piecewise-linear space.
Eigen::MatrixXd constraint_matrix(const MacroGeometry& geo, StressVariant variant);

/// Null space of a row-normalized matrix by SVD with relative threshold `rel_tol`.
/// Throws NumericalError listing the singular values if the nullity differs from `expected`.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& rows, int expected, double rel_tol = 1e-10);

struct LocalBasis {
    StressVariant variant = StressVariant::full;
    int cell = -1;
    int nshape = 0;
    Eigen::MatrixXd raw;  ///< 96 x nshape, nodal basis dual to `dofs`
    std::vector<DofDescriptor> dofs;
    double dof_sigma_min = 0.0;  ///< singular values of the DOF matrix on the orthonormal null-space basis
    double dof_sigma_max = 0.0;
    /// vertex_values[s]: 36 x nshape, row v*9 + i*3 + j holds entry (i, j) at vertex slot v of subtet s.
    std::array<Eigen::MatrixXd, 4> vertex_values;
};

LocalBasis build_stress_basis(const MacroGeometry& geo, StressVariant variant);

/// Full 3x3 vertex values (36 x ncols per subtet) of raw symmetric coefficients.
std::array<Eigen::MatrixXd, 4> raw_to_vertex_values(const Eigen::MatrixXd& raw);

/// Value of a raw symmetric field at a point of subtet s given by subtet barycentrics.
Mat3 raw_value(const Eigen::VectorXd& raw, int s, const std::array<double, 4>& bary);

// ---------------------------------------------------------------------------
// Rigid motions and the operators P_T, I_T.
//
// V_h(T) coefficients: values at the macro vertices, index j*3 + i.
// W_h(T) coefficients: value on subtet K, index K*3 + i.

/// Rigid basis: e_k (k < 3) and e_{k-3} x (x - z) / diam (k >= 3).
Vec3 rigid_field(const MacroGeometry& geo, int k, const Vec3& x);

struct RigidOps {
    Eigen::MatrixXd PT;          ///< 12 x 12, V_h -> W_h (L2 projection)
    Eigen::MatrixXd IT;          ///< 12 x 12, W_h -> V_h (centroid interpolation)
    Eigen::MatrixXd rigid_vh;    ///< 12 x 6, rigid basis in V_h coefficients
    Eigen::MatrixXd ptr_w;       ///< 12 x 6, P_T R(T) in W_h coefficients
    Eigen::MatrixXd complement;  ///< 12 x 6, basis of the W_h-orthogonal complement of P_T R(T)
    Eigen::MatrixXd rigid_gram;  ///< 6 x 6, int_T r_a . r_b
};

RigidOps rigid_ops(const MacroGeometry& geo);

/// Subtet means of a vector field (L2 projection onto W_h(T)), degree-`degree` quadrature.
Eigen::VectorXd project_wh(const MacroGeometry& geo, const VectorField& f, int degree = 6);

// ---------------------------------------------------------------------------
// Quadratic vector fields (Bernstein basis) and S_h(T).

/// Degree-2 Bernstein polynomials in macro barycentrics: lambda_a^2 (a = 0..3),
/// then 2 lambda_a lambda_b for (a,b) = 01,02,03,12,13,23.
std::array<double, 10> bernstein2(const std::array<double, 4>& lam);
/// Gradients of the Bernstein polynomials.
std::array<Vec3, 10> bernstein2_grad(const std::array<double, 4>& lam, const std::array<Vec3, 4>& grad_lam);
/// Gradients of the macro barycentric coordinates.
std::array<Vec3, 4> macro_grad_lambda(const MacroGeometry& geo);

/// Value of a [P2]^3 field with coefficients c (index beta*3 + i).
Vec3 p2_value(const MacroGeometry& geo, const Eigen::VectorXd& c, const Vec3& x);

struct ShBasis {
    Eigen::MatrixXd moments;  ///< 6 x 30, int_T phi_j . r_k
    Eigen::MatrixXd basis;    ///< 30 x 24, S_h(T) inside [P2]^3
};

ShBasis sh_basis(const MacroGeometry& geo);

}  // namespace alfeld
