// Command-line driver: verify | convergence | solve.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "alfeld/linear_solver.hpp"
#include "alfeld/parallel.hpp"
#include "alfeld/study.hpp"
#include "alfeld/verification.hpp"
#include "alfeld/vtk.hpp"

using namespace alfeld;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct Options {
    int threads = 0;

    std::vector<int> ndims;
    int trials = 100;
    std::uint64_t seed = 12345;
    int bgg_fields = 200;
    bool no_infsup = false;
    std::string summary_path;

    std::string method = "jkm";
    std::string weaksym_disp = "wh";
    std::vector<int> levels{2, 4, 8};
    std::string material = "iso:E=1,nu=0.3";
    std::string case_id = "trig";
    bool postprocess = false;
    bool robustness = false;
    std::vector<double> nus{0.3, 0.4999, 0.49999};
    std::string out;

    std::string mesh_path;
    int cube = 0;
    std::string vtk_path;
};

MethodConfig method_config(const Options& o) {
    MethodConfig m;
    m.id = parse_method(o.method);
    if (o.weaksym_disp == "vh")
        m.weaksym_disp = DisplacementSpace::vh;
    else if (o.weaksym_disp != "wh")
        throw InvalidArgument("--weaksym-disp must be wh or vh");
    return m;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", x);
    return buf;
}

std::string opt(const std::optional<double>& x, int width = 7) {
    char buf[32];
    if (x)
        std::snprintf(buf, sizeof buf, "%*.3f", width, *x);
    else
        std::snprintf(buf, sizeof buf, "%*s", width, "-");
    return buf;
}

void print_rows(std::ostream& out, const std::vector<ErrorRow>& rows) {
    out << "   n  ndof_sigma  ndof_u  err_sigma_A  err_u_L2    err_Pu_L2   err_ustar     rate_sA rate_u  rate_Pu rate_u*\n";
    for (const auto& r : rows) {
        char head[64];
        std::snprintf(head, sizeof head, "%4d  %10d  %6d  ", r.n, r.ndof_sigma, r.ndof_u);
        out << head << sci(r.err_sigma_A) << "  " << sci(r.err_u_L2) << "  " << sci(r.err_Pu_L2) << "  "
            << (r.err_ustar_L2 ? sci(*r.err_ustar_L2) : std::string("     -    ")) << "  " << opt(r.rate_sigma_A)
            << opt(r.rate_u) << opt(r.rate_Pu, 9) << opt(r.rate_ustar, 8) << "\n";
    }
}

int run_verify(const Options& o) {
    VerifyOptions v;
    if (!o.ndims.empty()) v.ndims = o.ndims;
    v.trials = o.trials;
    v.seed = o.seed;
    v.bgg_fields = o.bgg_fields;
    v.infsup = !o.no_infsup;
    const VerificationReport rep = run_verification(v);
    std::cout << rep.text();
    if (!o.summary_path.empty()) {
        std::ofstream f(o.summary_path);
        f << rep.summary();
        if (!f) throw Error("cannot write '" + o.summary_path + "'");
    }
    return rep.pass() ? 0 : kExitNumerical;
}

int run_convergence(const Options& o) {
    StudyConfig c;
    c.method = method_config(o);
    c.levels = o.levels;
    c.material = o.material;
    c.case_id = o.case_id;
    c.postprocess = o.postprocess;
    const StudyResult res = convergence_study(c);
    if (o.out.empty()) {
        write_csv(std::cout, res);
    } else {
        std::ofstream f(o.out);
        write_csv(f, res);
        if (!f) throw Error("cannot write '" + o.out + "'");
        std::cout << describe(c.method) << ", " << o.material << ", case " << o.case_id << "\n";
        print_rows(std::cout, res.rows);
    }
    if (o.robustness) {
        const RobustnessResult rr = robustness_study(c.method, o.levels, o.nus);
        std::cout << rr.text();
    }
    if (!res.complete) {
        std::cerr << "error: " << res.failure << "\n";
        return kExitNumerical;
    }
    return 0;
}

int run_solve(const Options& o) {
    const MethodConfig m = method_config(o);
    const SimplexMesh macro = o.mesh_path.empty() ? generate_cube_mesh(o.cube) : read_mesh_file(o.mesh_path);
    auto mesh = std::make_shared<const SplitMesh>(macro);
    const ComplianceTensor material = parse_material(o.material);
    const ManufacturedCase mc = manufactured_case(material, o.case_id);
    const VectorField* bu = mc.zero_boundary ? nullptr : &mc.u;
    const DiscreteSolution sol = run_method(mesh, m, material, load_from(mc.f), bu);

    std::unique_ptr<PostprocessedField> post;
    if (o.postprocess) post = std::make_unique<PostprocessedField>(postprocess_displacement(sol));
    const ErrorRow row = error_norms(sol, mc, post.get(), o.cube);
    std::cout << describe(m) << " on " << macro.num_cells() << " macro cells (" << 4 * macro.num_cells()
              << " subtets), " << material.describe() << ", case " << o.case_id << "\n"
              << "unknowns " << sol.disc->table.size() << " (stress " << row.ndof_sigma << ", displacement "
              << row.ndof_u << ")\n"
              << "solver residual " << sci(sol.info.residual) << "\n"
              << "err_sigma_A " << sci(row.err_sigma_A) << "\nerr_sigma_L2 " << sci(row.err_sigma_L2)
              << "\nerr_u_L2 " << sci(row.err_u_L2) << "\nerr_Pu_L2 " << sci(row.err_Pu_L2) << "\n";
    if (row.err_ustar_L2) std::cout << "err_ustar_L2 " << sci(*row.err_ustar_L2) << "\n";
    if (!o.vtk_path.empty()) {
        write_vtk_file(o.vtk_path, sol, post.get());
        std::cout << "wrote " << o.vtk_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    select_blas_kernel(argv);
    Options o;
    CLI::App app{"Mixed finite elements for linear elasticity on Alfeld splits"};
    app.require_subcommand(1);
    app.add_option("--threads", o.threads, "worker threads (default: ALFELD_ELAST_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "structural checks: dimensions, kernels, commuting, BGG, inf-sup");
    verify->add_option("--ndim", o.ndims, "restrict to these dimensions (2, 3, 4)")
        ->check(CLI::IsMember({2, 3, 4}))
        ->delimiter(',');
    verify->add_option("--trials", o.trials, "random tetrahedra per unisolvency check")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--bgg-fields", o.bgg_fields, "random fields per identity")->check(CLI::PositiveNumber);
    verify->add_flag("--no-infsup", o.no_infsup, "skip the inf-sup estimates");
    verify->add_option("--summary", o.summary_path, "write `name status value` lines to this file");

    auto add_method = [&o](CLI::App* sub) {
        sub->add_option("--method", o.method, "jkm | p0 | reduced | reduced2 | weaksym")->required();
        sub->add_option("--weaksym-disp", o.weaksym_disp, "displacement space of weaksym: wh | vh");
        sub->add_option("--material", o.material, "iso:E=..,nu=.. | iso:lambda=..,mu=.. | voigt:<path to 6x6 stiffness>");
        sub->add_option("--case", o.case_id, "manufactured case: trig | divfree | linear");
        sub->add_flag("--postprocess", o.postprocess, "compute the postprocessed displacement u*");
    };

    auto* conv = app.add_subcommand("convergence", "error norms and observed rates over cube levels");
    add_method(conv);
    conv->add_option("--levels", o.levels, "strictly increasing cube levels")->delimiter(',');
    conv->add_flag("--robustness", o.robustness, "also tabulate stress errors over Poisson ratios");
    conv->add_option("--nus", o.nus, "Poisson ratios for --robustness")->delimiter(',');
    conv->add_option("--out", o.out, "CSV output path (default: stdout)");

    auto* solve = app.add_subcommand("solve", "one solve on a cube level or a mesh file");
    add_method(solve);
    auto* mesh_opt = solve->add_option("--mesh", o.mesh_path, "ASCII mesh file")->check(CLI::ExistingFile);
    auto* cube_opt = solve->add_option("--cube", o.cube, "unit cube with n^3 subcubes")->check(CLI::PositiveNumber);
    mesh_opt->excludes(cube_opt);
    solve->add_option("--vtk", o.vtk_path, "legacy VTK output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    if (solve->parsed() && o.mesh_path.empty() && o.cube == 0) {
        std::cerr << "solve: one of --mesh or --cube is required\n" << solve->help();
        return kExitUsage;
    }

    set_num_threads(o.threads > 0 ? o.threads : threads_from_environment(1));
    try {
        if (verify->parsed()) return run_verify(o);
        if (conv->parsed()) return run_convergence(o);
        return run_solve(o);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
