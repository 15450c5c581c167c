#include "spdc/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spdc/kernels.hpp"

// LAPACK Hermitian eigensolver (column-major Fortran convention).
extern "C" void zheev_(const char* jobz, const char* uplo, const int* n,
                       std::complex<double>* a, const int* lda, double* w,
                       std::complex<double>* work, const int* lwork, double* rwork,
                       int* info);

namespace spdc {
namespace {

// rho = F F^H, row-major Hermitian n x n.
std::vector<cplx> gram_matrix(const std::vector<cplx>& f, int n) {
    std::vector<cplx> rho(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const cplx* ri = f.data() + static_cast<std::size_t>(i) * n;
        for (int j = i; j < n; ++j) {
            const cplx* rj = f.data() + static_cast<std::size_t>(j) * n;
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n; ++k) {
                const double ar = ri[k].real(), ai = ri[k].imag();
                const double br = rj[k].real(), bi = rj[k].imag();
                re += ar * br + ai * bi;
                im += ai * br - ar * bi;
            }
            rho[static_cast<std::size_t>(i) * n + j] = {re, im};
            rho[static_cast<std::size_t>(j) * n + i] = {re, -im};
        }
    }
    return rho;
}

}  // namespace

SchmidtResult schmidt_decompose(const JointAmplitude& jsa, bool want_modes) {
    const int n = jsa.grid.n;
    for (const auto& v : jsa.values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ComputeError("joint amplitude contains non-finite entries");

    // Schmidt coefficients squared are the eigenvalues of the reduced signal state.
    std::vector<cplx> rho = gram_matrix(jsa.values, n);
    // Row-major rho handed to a column-major solver is conj(rho): same (real)
    // eigenvalues; eigenvectors come back conjugated and are fixed up below.
    std::vector<double> eig(n);
    int info = 0;
    const char jobz = want_modes ? 'V' : 'N';
    const char uplo = 'L';
    int lwork = -1;
    std::vector<double> rwork(std::max(1, 3 * n - 2));
    cplx wk_query;
    zheev_(&jobz, &uplo, &n, rho.data(), &n, eig.data(), &wk_query, &lwork, rwork.data(),
           &info);
    lwork = static_cast<int>(wk_query.real());
    std::vector<cplx> work(std::max(1, lwork));
    zheev_(&jobz, &uplo, &n, rho.data(), &n, eig.data(), work.data(), &lwork,
           rwork.data(), &info);
    if (info != 0) throw ComputeError("eigen-decomposition failed (zheev info != 0)");

    // Ascending from LAPACK; flip to descending, clamp tiny negatives, renormalize.
    std::reverse(eig.begin(), eig.end());
    double total = 0.0;
    for (double& e : eig) {
        if (e < 0.0) e = 0.0;
        total += e;
    }
    SchmidtResult res;
    res.coefficients.resize(n);
    double p = 0.0;
    for (int j = 0; j < n; ++j) {
        const double lam = eig[j] / total;
        res.coefficients[j] = std::sqrt(lam);
        p += lam * lam;
    }
    res.purity = p;
    res.schmidt_number = 1.0 / p;

    if (want_modes) {
        // Column j of the solver output is an eigenvector of conj(rho) for the
        // j-th ascending eigenvalue; conjugate and reorder to descending.
        res.signal_modes.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
        res.idler_modes.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
        for (int j = 0; j < n; ++j) {
            const int col = n - 1 - j;  // descending
            cplx* u = res.signal_modes.data() + static_cast<std::size_t>(j) * n;
            for (int i = 0; i < n; ++i)
                u[i] = std::conj(rho[static_cast<std::size_t>(i) * n + col]);
            // Column-major column `col` = entries a[i + col*n] = row-major [i][col]
            // of the buffer; both expressions coincide here.
            const double c = res.coefficients[j];
            if (c > 1e-12) {
                // v = F^H u / c; the idler mode is conj(v) so that
                // f(ws, wi) = sum_j c_j phi_j(ws) psi_j(wi) holds literally.
                cplx* v = res.idler_modes.data() + static_cast<std::size_t>(j) * n;
                for (int k = 0; k < n; ++k) {
                    cplx acc{0.0, 0.0};
                    for (int i = 0; i < n; ++i)
                        acc += std::conj(jsa.values[static_cast<std::size_t>(i) * n + k]) *
                               u[i];
                    v[k] = std::conj(acc / c);
                }
            }
        }
    }
    return res;
}

double purity(const JointAmplitude& jsa) {
    return kernels::purity_gram(jsa.values.data(), jsa.grid.n);
}

double purity_oracle(const JointAmplitude& jsa) {
    const int n = jsa.grid.n;
    // Deliberately plain: rho = F F^H, then Tr(rho rho) by a second product.
    std::vector<cplx> rho(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx acc{0.0, 0.0};
            for (int k = 0; k < n; ++k)
                acc += jsa.at(i, k) * std::conj(jsa.at(j, k));
            rho[static_cast<std::size_t>(i) * n + j] = acc;
        }
    cplx tr{0.0, 0.0};
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            tr += rho[static_cast<std::size_t>(i) * n + k] *
                  rho[static_cast<std::size_t>(k) * n + i];
    return tr.real();
}

BandwidthOptimum optimize_pump_bandwidth(const CrystalRecord& record, JsaConfig config,
                                         double fwhm_lo_nm, double fwhm_hi_nm,
                                         int search_n) {
    auto eval = [&](double bw, int n) {
        JsaConfig c = config;
        c.pump_fwhm_nm = bw;
        c.grid_n = n;
        return purity(build_degenerate_jsa(record, c));
    };

    constexpr int kCoarse = 20;
    BandwidthOptimum out;
    out.trace.reserve(kCoarse);
    const double ratio = fwhm_hi_nm / fwhm_lo_nm;
    int best = 0;
    for (int k = 0; k < kCoarse; ++k) {
        const double bw = fwhm_lo_nm * std::pow(ratio, static_cast<double>(k) / (kCoarse - 1));
        const double p = eval(bw, search_n);
        out.trace.push_back({bw, p});
        if (p > out.trace[best].purity) best = k;
    }
    if (best == 0 || best == kCoarse - 1)
        throw ComputeError("pump-bandwidth maximum at the search-range edge; widen the range");
    // Unimodality check: fall back to best-of-scan for multi-peaked traces.
    int peaks = 0;
    for (int k = 1; k + 1 < kCoarse; ++k)
        if (out.trace[k].purity > out.trace[k - 1].purity &&
            out.trace[k].purity > out.trace[k + 1].purity)
            ++peaks;
    double a = out.trace[best - 1].pump_fwhm_nm;
    double b = out.trace[best + 1].pump_fwhm_nm;
    if (peaks <= 1) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = eval(x1, search_n), f2 = eval(x2, search_n);
        while (b - a > 1e-3 * b) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = eval(x2, search_n);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = eval(x1, search_n);
            }
        }
        out.pump_fwhm_nm = 0.5 * (a + b);
    } else {
        out.pump_fwhm_nm = out.trace[best].pump_fwhm_nm;
    }
    out.purity = eval(out.pump_fwhm_nm, config.grid_n);
    return out;
}

std::vector<PurityScanRow> purity_scan(const CrystalRecord& record, double from_nm,
                                       double to_nm, double step_nm, double length_mm,
                                       PumpPolicy policy, double fixed_fwhm_nm,
                                       int grid_n) {
    std::vector<PurityScanRow> rows;
    for (double lam = from_nm; lam <= to_nm + 1e-9; lam += step_nm) {
        PurityScanRow row;
        row.lambda_nm = lam;
        try {
            JsaConfig cfg;
            cfg.lambda_nm = lam;
            cfg.length_mm = length_mm;
            cfg.grid_n = grid_n;
            row.period_um = poling_period_degenerate(record, {}, lam).period_um;
            if (policy == PumpPolicy::FixedBandwidth) {
                cfg.pump_fwhm_nm = fixed_fwhm_nm;
                row.pump_fwhm_nm = fixed_fwhm_nm;
                row.purity = purity(build_degenerate_jsa(record, cfg));
            } else {
                const BandwidthOptimum opt = optimize_pump_bandwidth(record, cfg);
                row.pump_fwhm_nm = opt.pump_fwhm_nm;
                row.purity = opt.purity;
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace spdc
