#include "alfeld/vtk.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "alfeld/quadrature.hpp"

namespace alfeld {

namespace {

constexpr int kTetra = 10;

void write_grid(std::ostream& out, const DiscreteSolution& sol,
                const std::vector<Vec3>& disp_means) {
    const auto& fine = sol.disc->mesh->complex.fine;
    out << "# vtk DataFile Version 3.0\n"
        << "alfeld " << describe(sol.method()) << "\n"
        << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << std::setprecision(17);
    out << "POINTS " << fine.num_vertices() << " double\n";
    for (const auto& p : fine.vertices) out << p(0) << ' ' << p(1) << ' ' << p(2) << "\n";
    const int nc = fine.num_cells();
    out << "CELLS " << nc << ' ' << 5 * nc << "\n";
    for (const auto& c : fine.cells) out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << "\n";
    out << "CELL_TYPES " << nc << "\n";
    for (int c = 0; c < nc; ++c) out << kTetra << "\n";

    // A P1 field's subtet mean is its vertex average.
    const StressField s = sol.stress_field();
    out << "CELL_DATA " << nc << "\nFIELD fields 2\n";
    out << "stress 6 " << nc << " double\n";
    for (int c = 0; c < nc; ++c) {
        Mat3 m = Mat3::Zero();
        for (const auto& v : s.v[static_cast<std::size_t>(c)]) m += 0.25 * v;
        out << m(0, 0) << ' ' << m(1, 1) << ' ' << m(2, 2) << ' ' << m(1, 2) << ' ' << m(0, 2) << ' ' << m(0, 1) << "\n";
    }
    out << "displacement 3 " << nc << " double\n";
    for (const auto& u : disp_means) out << u(0) << ' ' << u(1) << ' ' << u(2) << "\n";
    if (!out) throw Error("write_vtk: output stream failure");
}

}  // namespace

void write_vtk(std::ostream& out, const DiscreteSolution& sol) {
    const DisplacementField u = sol.disp_field();
    std::vector<Vec3> means;
    means.reserve(u.v.size());
    for (const auto& vals : u.v) means.emplace_back(0.25 * (vals[0] + vals[1] + vals[2] + vals[3]));
    write_grid(out, sol, means);
}

void write_vtk(std::ostream& out, const DiscreteSolution& sol, const PostprocessedField& post) {
    const auto& d = *sol.disc;
    const auto& rule = simplex_rule(3, 2);
    std::vector<Vec3> means(static_cast<std::size_t>(d.mesh->complex.fine.num_cells()), Vec3::Zero());
    for (int c = 0; c < d.num_cells(); ++c) {
        const auto& g = d.geometry[static_cast<std::size_t>(c)];
        for (int s = 0; s < 4; ++s) {
            Vec3 acc = Vec3::Zero();
            for (std::size_t q = 0; q < rule.size(); ++q) {
                Vec3 x = Vec3::Zero();
                for (int v = 0; v < 4; ++v) x += rule.points[q][static_cast<std::size_t>(v)] * g.sub_vertex[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
                acc += 6.0 * rule.weights[q] * post.value(c, x);
            }
            means[static_cast<std::size_t>(d.mesh->complex.subcell(c, s))] = acc;
        }
    }
    write_grid(out, sol, means);
}

void write_vtk_file(const std::string& path, const DiscreteSolution& sol, const PostprocessedField* post) {
    std::ofstream f(path);
    if (!f) throw Error("write_vtk_file: cannot open '" + path + "'");
    if (post)
        write_vtk(f, sol, *post);
    else
        write_vtk(f, sol);
    f.close();
    if (!f) throw Error("write_vtk_file: failed writing '" + path + "'");
}

VtkContents read_vtk(std::istream& in) {
    VtkContents v;
    std::string word;
    auto fail = [](const std::string& what) { throw ParseError("read_vtk: " + what); };
    while (in >> word) {
        if (word == "POINTS") {
            std::string type;
            in >> v.num_points >> type;
            double x;
            for (int i = 0; i < 3 * v.num_points; ++i)
                if (!(in >> x)) fail("truncated POINTS");
        } else if (word == "CELLS") {
            int size = 0;
            in >> v.num_cells >> size;
            int x;
            for (int i = 0; i < size; ++i)
                if (!(in >> x)) fail("truncated CELLS");
        } else if (word == "CELL_TYPES") {
            int n = 0;
            in >> n;
            v.cell_types.resize(static_cast<std::size_t>(n));
            for (auto& t : v.cell_types)
                if (!(in >> t)) fail("truncated CELL_TYPES");
        } else if (word == "FIELD") {
            std::string name;
            int narrays = 0;
            in >> name >> narrays;
            for (int a = 0; a < narrays; ++a) {
                std::string aname, type;
                int ncomp = 0, ntuples = 0;
                if (!(in >> aname >> ncomp >> ntuples >> type)) fail("bad FIELD array header");
                auto& vals = v.cell_arrays[aname];
                vals.resize(static_cast<std::size_t>(ncomp) * static_cast<std::size_t>(ntuples));
                for (auto& x : vals)
                    if (!(in >> x)) fail("truncated array '" + aname + "'");
            }
        }
    }
    return v;
}

}  // namespace alfeld
