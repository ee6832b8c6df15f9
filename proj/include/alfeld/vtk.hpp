#pragma once

// Legacy ASCII VTK output on the Alfeld split mesh: one tetrahedron per
// subtet, stress (Voigt order xx yy zz yz xz xy) and displacement as cell data
// averaged over each subtet.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "alfeld/postprocess.hpp"

namespace alfeld {

void write_vtk(std::ostream& out, const DiscreteSolution& sol);
/// Same grid; the displacement array holds subtet means of the postprocessed u*.
void write_vtk(std::ostream& out, const DiscreteSolution& sol, const PostprocessedField& post);
/// Throws Error if the file cannot be written.
void write_vtk_file(const std::string& path, const DiscreteSolution& sol, const PostprocessedField* post = nullptr);

/// Minimal reader for files written above (tests and round trips).
struct VtkContents {
    int num_points = 0;
    int num_cells = 0;
    std::vector<int> cell_types;
    std::map<std::string, std::vector<double>> cell_arrays;  ///< name -> flattened values
};
VtkContents read_vtk(std::istream& in);

}  // namespace alfeld
