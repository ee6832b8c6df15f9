#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace alfeld {

using Point = Eigen::VectorXd;

/// Affine data of an N-simplex: x = x_0 + J (xhat), barycentric gradients.
struct SimplexGeometry {
    int ndim = 0;
    std::vector<Point> vertices;
    Eigen::MatrixXd jacobian;       ///< columns x_i - x_0, i = 1..N
    Eigen::MatrixXd jacobian_inv;
    double det = 0.0;               ///< det(J), signed
    double volume = 0.0;            ///< |det J| / N!
    std::vector<Point> grad_lambda; ///< gradient of each barycentric coordinate

    explicit SimplexGeometry(const std::vector<Point>& verts);

    Point map(const std::vector<double>& bary) const;
    std::vector<double> barycentric(const Point& x) const;
    Point centroid() const;
    double diameter() const;
};

/// Conforming simplicial mesh in R^N with positively oriented cells.
struct SimplexMesh {
    int ndim = 3;
    std::vector<Point> vertices;
    std::vector<std::vector<int>> cells;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_cells() const { return static_cast<int>(cells.size()); }
    std::vector<Point> cell_vertices(int c) const;
    SimplexGeometry cell_geometry(int c) const { return SimplexGeometry(cell_vertices(c)); }
    double signed_volume(int c) const;
    double total_volume() const;
    /// Largest cell diameter.
    double max_diameter() const;
};

/// One (N-1)-face of a mesh. Identity is the sorted global vertex tuple.
struct Facet {
    std::vector<int> vertices;          ///< ascending global vertex ids
    std::array<int, 2> cells{-1, -1};   ///< cells[0] < cells[1]; cells[1] = -1 on the boundary
    std::array<int, 2> local_index{-1, -1};  ///< opposite local vertex in each cell
    Point normal;                       ///< unit; points from cells[0] to cells[1] (outward on boundary)
    double measure = 0.0;

    bool on_boundary() const { return cells[1] < 0; }
};

struct FacetTable {
    std::vector<Facet> facets;                  ///< sorted by vertex tuple
    std::vector<std::vector<int>> cell_facets;  ///< cell_facets[c][i] = facet opposite local vertex i

    int num_facets() const { return static_cast<int>(facets.size()); }
    int num_boundary() const;
};

/// Builds the facet table; throws on nonconforming adjacency (a facet shared by > 2 cells).
FacetTable build_facet_table(const SimplexMesh& mesh);

/// Checks positive cell volumes, index ranges and conformity. Throws ParseError naming the cell.
void validate_mesh(const SimplexMesh& mesh);

/// Unit cube [0,1]^3 with n^3 subcubes, each split into 6 Kuhn tetrahedra.
SimplexMesh generate_cube_mesh(int n);

/// Reference N-simplex: origin and unit coordinate vectors.
SimplexMesh reference_simplex_mesh(int ndim);

/// ASCII mesh I/O: `ndim nverts ncells`, vertex coordinates, zero-based cell
/// vertex lists; '#' starts a comment line.
SimplexMesh read_mesh(const std::string& text);
SimplexMesh read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const SimplexMesh& mesh);
std::string write_mesh(const SimplexMesh& mesh);

/// Alfeld refinement: every macro cell T = [x_0..x_N] is split at its
/// barycenter z into subcells T_i = T with x_i replaced by z.
/// Fine vertices are the parent vertices followed by the split points
/// (split point of cell c has id nverts + c). Fine cell (N+1) c + i is T_i of cell c.
struct AlfeldComplex {
    SimplexMesh parent;
    SimplexMesh fine;
    std::vector<Point> split_points;

    int ndim() const { return parent.ndim; }
    int subcells_per_cell() const { return parent.ndim + 1; }
    int subcell(int c, int i) const { return c * (parent.ndim + 1) + i; }
    int split_vertex(int c) const { return parent.num_vertices() + c; }
};

AlfeldComplex alfeld_split(const SimplexMesh& mesh);

/// Facet tables of the macro mesh and of the split mesh.
struct Connectivity {
    FacetTable macro;
    FacetTable fine;
    /// Fine facets containing the split point of each macro cell, N(N+1)/2 each.
    std::vector<std::vector<int>> internal_facets;
};

Connectivity build_connectivity(const AlfeldComplex& complex);

/// An Alfeld complex together with its connectivity.
struct SplitMesh {
    AlfeldComplex complex;
    Connectivity conn;

    explicit SplitMesh(const SimplexMesh& mesh);
    int num_cells() const { return complex.parent.num_cells(); }
};

/// Red (8-tetrahedra) refinement of a tetrahedral mesh. Children of each
/// parent cell are numbered consecutively, so each child lies inside its parent.
SimplexMesh refine_red(const SimplexMesh& mesh);

}  // namespace alfeld
