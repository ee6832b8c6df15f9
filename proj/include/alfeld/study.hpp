#pragma once

// Error measurement and convergence studies on the unit-cube mesh family.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "alfeld/postprocess.hpp"

namespace alfeld {

struct ErrorRow {
    int level = 0;
    int n = 0;
    double h = 0.0;
    int ndof_sigma = 0;
    int ndof_u = 0;
    double err_sigma_A = 0.0;
    double err_sigma_L2 = 0.0;
    double err_u_L2 = 0.0;
    double err_Pu_L2 = 0.0;
    std::optional<double> err_ustar_L2;
    std::optional<double> err_Pi_sigma_A;  ///< ||Pi sigma - sigma_h||_A
    std::optional<double> interp_sigma_A;  ///< ||Pi sigma - sigma||_A
    std::optional<double> rate_sigma_A, rate_u, rate_Pu, rate_ustar, rate_Pi_sigma_A;

    // Diagnostics (not in the CSV).
    double norm_sigma_A = 0.0;
    double norm_sigma_L2 = 0.0;
    double mean_trace_defect = 0.0;  ///< |int tr(sigma - sigma_h)| / ||sigma||_L2
    std::optional<double> div_Pi_defect;  ///< max per subtet |div(Pi sigma - sigma_h)| / ||sigma||_L2
    double solver_residual = 0.0;
};

/// Measure one solution against the exact case (degree-6 quadrature per subtet).
/// `postprocessed` adds err_ustar_L2. `n` is the cube level (for reporting).
ErrorRow error_norms(const DiscreteSolution& sol, const ManufacturedCase& exact,
                     const PostprocessedField* postprocessed = nullptr, int n = 0);

/// log(e_prev / e) / log(h_prev / h); empty unless both errors exceed 1e-14.
std::optional<double> observed_rate(double e_prev, double e, double h_prev, double h);
/// Fill the rate columns of rows[1..] from their predecessors.
void fill_rates(std::vector<ErrorRow>& rows);

struct StudyConfig {
    MethodConfig method;
    std::vector<int> levels{2, 4, 8};
    std::string material = "iso:E=1,nu=0.3";
    std::string case_id = "trig";
    bool postprocess = false;
};

struct StudyResult {
    std::vector<ErrorRow> rows;
    bool complete = true;
    std::string failure;  ///< set when a level failed (rows hold the finished levels)
};

StudyResult convergence_study(const StudyConfig& config);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const StudyResult& result);

struct RobustnessEntry {
    double nu = 0.0;
    int n = 0;
    double err_sigma_L2 = 0.0;
    double err_sigma_A = 0.0;
    std::optional<double> rate_sigma_L2;
    std::optional<double> rate_sigma_A;
};

struct RobustnessResult {
    MethodConfig method;
    std::vector<double> nus;
    std::vector<int> levels;
    std::vector<RobustnessEntry> entries;  ///< nu-major
    /// err_sigma_L2(nu) / err_sigma_L2(nu_list.front()) per (nu, level).
    double ratio(double nu, int n) const;
    const RobustnessEntry& entry(double nu, int n) const;
    std::string text() const;
};

/// Stress errors for each Poisson ratio (E = 1) on the divergence-free case,
/// whose stress does not depend on lambda.
RobustnessResult robustness_study(const MethodConfig& method, const std::vector<int>& levels,
                                  const std::vector<double>& nus);

/// Discrete superconvergence experiment for f in W_h (p0 method): on cube
/// level n, f_n = P_n f_trig; the reference solution uses the same f_n on the
/// Alfeld fine mesh of level n refined `refinements` times (red), and
/// e_n = ||P_n(u_ref - u_n)||.
struct WhLoadRow {
    int n = 0;
    double h = 0.0;
    int reference_cells = 0;
    double err_P = 0.0;
    std::optional<double> rate;
};
std::vector<WhLoadRow> wh_load_experiment(const std::vector<int>& levels, int refinements,
                                          const std::string& material = "iso:E=1,nu=0.3");

}  // namespace alfeld
