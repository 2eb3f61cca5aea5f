#pragma once

// Assembled linearized operators, their spectra, and the per-mode kernel law.

#include "hitchin_glue/eigensolve.hpp"
#include "hitchin_glue/neck.hpp"

#include <functional>
#include <vector>

namespace hg {

enum class OperatorKind { L_full, Delta_A, Dirac_L1L2, ModeBlock };

// Real sparse matrix on interior nodes. For L_full / Delta_A the unknown index is
// ((i-1)*M + m)*3 + b in the i su(2) basis; for Dirac_L1L2 the stored matrix is the real
// form [[Re, -Im], [Im, Re]] of D^H D with complex unknowns ((i-1)*M + m)*6 + c.
struct LinearOperatorHandle {
    OperatorKind kind = OperatorKind::L_full;
    NeckGrid grid;
    SpMat matrix;
    int mode = 0;
    // Multiplies lambda(matrix) to give the squared singular value (Dirac only).
    double sigma_scale = 1.0;
};

// Coordinates of a section on interior nodes and back.
Eigen::VectorXd section_to_vector(const NeckGrid& g, const std::vector<Mat2>& gamma);
std::vector<Mat2> vector_to_section(const NeckGrid& g, const Eigen::VectorXd& v);

LinearOperatorHandle assemble_L(const NeckPair& p);
LinearOperatorHandle assemble_L(const PairFields& f);
// Same operator with Phi = 0.
LinearOperatorHandle assemble_delta_A(const NeckPair& p);

double smallest_eigenvalue(const LinearOperatorHandle& op, double tol = 1e-8, unsigned long long seed = 0);
std::vector<double> smallest_eigenvalues(const LinearOperatorHandle& op, int k, double tol = 1e-8,
                                         unsigned long long seed = 0);
// Dense symmetric check: max |A - A^T| / max |A|.
double symmetry_defect(const SpMat& A);

// Dirac-type operator (psi1, psi2) -> (dbar_A psi1 + [Phi^* psi2], d_A psi2 + [Phi psi1]), nodes -> edges.
std::vector<Mat2> apply_dirac(const NeckPair& p, const std::vector<Mat2>& psi1, const std::vector<Mat2>& psi2,
                              std::vector<Mat2>* out2);
LinearOperatorHandle assemble_dirac(const NeckPair& p);
double smallest_singular_value(const LinearOperatorHandle& op, double tol = 1e-8, unsigned long long seed = 0);

enum class ModeSector { diagonal, off_diagonal, full };
// Complex kernel dimension of the Fourier-mode system on the model (alpha, C) background.
int dirac_mode_kernel(int j, const ModelParams& p, ModeSector sector = ModeSector::full);

struct SpectrumOptions {
    double tol = 1e-8;
    unsigned long long seed = 0;
    bool with_dirac = false;
    int n_eigen = 1;
};

struct SpectrumReport {
    std::vector<double> R, T, lambda1, lambda1_T2, M_R, sigma_min, sigma_min_T;
    std::vector<std::vector<double>> lowest;  // n_eigen smallest per R
    double flatness = 0.0;                    // max/min of lambda1 T^2
    bool flat_pass = false;                   // flatness <= 1.5
    bool small_eigenvalue_flag = false;       // some lambda1 T^2 < 0.1 max
    double sigma_flatness = 0.0;
    bool sweep_adequate = false;              // >= 4 values spanning >= 2 decades
};

// Throws InsufficientSweep for fewer than two values; narrower sweeps are flagged in the report.
SpectrumReport scaling_study(const std::vector<double>& Rs, const std::function<NeckPair(double)>& background,
                             const SpectrumOptions& opt = {});
void validate_sweep(const std::vector<double>& Rs);

}  // namespace hg
