#include "symfield/limit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "symfield/errors.hpp"

namespace symfield {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Streaming log-sum-exp accumulator: keeps the running maximum exponent and
// the sum rescaled to it.
struct LogSum {
    double max_e = -kInf;
    double sum = 0.0;
    void add(double e) {
        if (e == -kInf) return;
        if (sum == 0.0) {
            max_e = e;
            sum = 1.0;
        } else if (e <= max_e) {
            sum += std::exp(e - max_e);
        } else {
            sum = sum * std::exp(max_e - e) + 1.0;
            max_e = e;
        }
    }
    double value() const { return sum == 0.0 ? 0.0 : std::exp(max_e + std::log(sum)); }
};

void require_evanescent(const LimitClass& lc, const char* who) {
    lc.validate();
    if (!lc.evanescent())
        throw validation_error(std::string(who) +
                               ": macroscopic class (alpha > 0); use ode_evolve");
}

// Single supported cycle length (any weight): closed-form log term. The
// n-th moment is nonzero only at n = u (j-1) + 1 and equals
// exp(-n t) t^u n^(u-1) w^u / u!.
struct SingleAtom {
    int j = 0;
    double w = 0.0;
};

bool single_atom(const LimitClass& lc, SingleAtom* sa) {
    int found = 0;
    for (auto [i, w] : lc.lambda)
        if (w > 0.0) {
            sa->j = i;
            sa->w = w;
            ++found;
        }
    return found == 1;
}

double log_mnc_single(long long n, double t, const SingleAtom& sa) {
    if (n == 1) return -t;
    long long step = sa.j - 1;
    if ((n - 1) % step != 0) return -kInf;
    double du = static_cast<double>((n - 1) / step);
    double dn = static_cast<double>(n);
    return -dn * t + du * std::log(t) + (du - 1.0) * std::log(dn) + du * std::log(sa.w) -
           std::lgamma(du + 1.0);
}

// LS(z) = sum_i lambda(i) z^(i-1) and its derivative.
double ls_eval(const LimitClass& lc, double z) {
    double s = 0.0;
    for (auto [i, w] : lc.lambda) s += w * std::pow(z, i - 1);
    return s;
}

double ls_deriv(const LimitClass& lc, double z) {
    double s = 0.0;
    for (auto [i, w] : lc.lambda) s += w * (i - 1) * std::pow(z, i - 2);
    return s;
}

// g(z) = log z - t (LS(z) - 1); concave, g(z*) = 0 at the fixed point.
double g_eval(const LimitClass& lc, double t, double z) {
    return std::log(z) - t * (ls_eval(lc, z) - 1.0);
}

}  // namespace

std::vector<double> mnc_table(const LimitClass& lc, double t, int n_max) {
    require_evanescent(lc, "mnc");
    if (n_max < 1) throw validation_error("mnc: n_max must be positive");
    if (t < 0.0) throw validation_error("mnc: negative time");
    if (n_max > (1 << 17)) throw capacity_error("mnc: n_max too large");
    std::vector<double> out(n_max, 0.0);
    if (t == 0.0) {
        out[0] = 1.0;
        return out;
    }

    // ls[m] = lambda(m+1): coefficient of z^m in LS(z).
    const int width = n_max;
    std::vector<double> ls(width, 0.0);
    int minm = 0;
    for (auto [i, w] : lc.lambda) {
        if (w <= 0.0) continue;
        if (lc.truncation > 0 && i > lc.truncation) continue;
        if (i - 1 < width) ls[i - 1] = w;
        if (minm == 0) minm = i - 1;
    }

    // m_n(t) = e^{-nt} sum_k t^k n^{k-1} / k! [z^{n-1}] LS(z)^k, accumulated
    // in log space per n.
    std::vector<LogSum> acc(n_max + 1);
    std::vector<double> P(width, 0.0);
    P[0] = 1.0;  // LS^0
    double logt = std::log(t);
    for (int k = 0;; ++k) {
        if (k > 0) {
            std::vector<double> Q(width, 0.0);
            for (int a = 0; a < width; ++a) {
                if (P[a] == 0.0) continue;
                for (auto [i, w] : lc.lambda) {
                    int m = i - 1;
                    if (m < width && a + m < width && ls[m] > 0.0) Q[a + m] += P[a] * ls[m];
                }
            }
            P.swap(Q);
        }
        bool any = false;
        for (int n = 1; n <= n_max; ++n) {
            double pc = P[n - 1];
            if (pc <= 0.0) continue;
            any = true;
            double e = -n * t + k * logt + (k - 1.0) * std::log(static_cast<double>(n)) -
                       std::lgamma(k + 1.0) + std::log(pc);
            acc[n].add(e);
        }
        if (!any && k > 0) break;
        if (minm == 0) break;  // empty class: only the k = 0 term exists
        if (static_cast<long long>(k + 1) * minm > n_max - 1) break;
    }
    for (int n = 1; n <= n_max; ++n) out[n - 1] = acc[n].value();
    return out;
}

double mnc(int n, double t, const LimitClass& lc) {
    require_evanescent(lc, "mnc");
    if (n < 1) throw validation_error("mnc: n must be positive");
    if (t < 0.0) throw validation_error("mnc: negative time");
    if (t == 0.0) return n == 1 ? 1.0 : 0.0;
    SingleAtom sa;
    if (single_atom(lc, &sa) && (lc.truncation == 0 || sa.j <= lc.truncation)) {
        double e = log_mnc_single(n, t, sa);
        return e == -kInf ? 0.0 : std::exp(e);
    }
    return mnc_table(lc, t, n)[n - 1];
}

double critical_time(const LimitClass& lc) {
    require_evanescent(lc, "critical_time");
    double total = lc.lambda_sum();
    if (std::fabs(total - 1.0) > 1e-12) return 0.0;
    double denom = 0.0;
    for (auto [i, w] : lc.lambda) denom += (i - 1) * w;
    return 1.0 / denom;
}

double atomic_mass(double t, const LimitClass& lc) {
    require_evanescent(lc, "atomic_mass");
    if (t < 0.0) throw validation_error("atomic_mass: negative time");
    if (t == 0.0) return 1.0;
    double total = lc.lambda_sum();
    if (std::fabs(total - 1.0) <= 1e-12 && 1.0 - t * ls_deriv(lc, 1.0) >= 0.0)
        return 1.0;  // at or below the critical time the walk stays atomic

    double lo = std::exp(-(t + 40.0));
    double hi = std::fabs(total - 1.0) <= 1e-12 ? 1.0 - 1e-12 : 1.0;
    if (g_eval(lc, t, hi) <= 0.0) return 1.0;  // root indistinguishable from 1
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (g_eval(lc, t, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// Saddle-type rigorous tail: m_n <= (r/n) e^{-n g(r)} for every r > 0, from
// [z^{n-1}] LS^k <= LS(r)^k r^{1-n}. Maximizing g gives the sharpest decay
// rate; the maximizer solves g'(r) = 0.
double best_tail_rate(const LimitClass& lc, double t, double* r_star) {
    double lo = 1e-9, hi = 1.0;
    auto gp = [&](double r) { return 1.0 / r - t * ls_deriv(lc, r); };
    while (gp(hi) > 0.0 && hi < 1e9) hi *= 2.0;
    if (hi >= 1e9) return -1.0;  // derivative never turns; no useful rate
    for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (gp(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    *r_star = 0.5 * (lo + hi);
    return g_eval(lc, t, *r_star);
}

double partial_sum(const LimitClass& lc, double t, long long K, bool closed_form,
                   const SingleAtom& sa) {
    if (closed_form) {
        // Only n = 1 + u (j-1) carry mass; sum those directly.
        double s = 0.0;
        long long step = sa.j - 1;
        for (long long n = 1; n <= K; n += step) s += std::exp(log_mnc_single(n, t, sa));
        return s;
    }
    std::vector<double> tab = mnc_table(lc, t, static_cast<int>(K));
    double s = 0.0;
    for (double v : tab) s += v;
    return s;
}

}  // namespace

SeriesMass atomic_mass_series(double t, const LimitClass& lc, double tol) {
    require_evanescent(lc, "atomic_mass_series");
    if (t < 0.0) throw validation_error("atomic_mass_series: negative time");
    if (tol <= 0.0) throw validation_error("atomic_mass_series: tolerance must be positive");
    SeriesMass out;
    if (t == 0.0) {
        out.value = 1.0;
        out.terms = 1;
        return out;
    }
    SingleAtom sa;
    bool closed = single_atom(lc, &sa) && lc.truncation == 0;
    if (lc.lambda.empty()) {
        out.value = std::exp(-t);
        out.terms = 1;
        return out;
    }

    double tc = critical_time(lc);
    bool at_critical = tc > 0.0 && std::fabs(t - tc) <= 1e-9 * std::max(1.0, tc);
    if (at_critical) {
        // The tail decays like K^{-1/2}; extrapolating 2 S(4K) - S(K)
        // cancels that leading term, leaving O(K^{-3/2}).
        long long K = static_cast<long long>(std::ceil(std::pow(tol, -2.0 / 3.0)));
        K = std::max<long long>(K, 1024);
        long long cap = closed ? 4000000 : 4096;
        if (K > cap)
            throw numeric_error("atomic_mass_series: tolerance not certifiable at the "
                                "critical time within capacity");
        double sK = partial_sum(lc, t, K, closed, sa);
        double s4K = partial_sum(lc, t, 4 * K, closed, sa);
        out.value = 2.0 * s4K - sK;
        out.terms = 4 * K;
        out.tail_bound = std::pow(static_cast<double>(K), -1.5);
        return out;
    }

    double r_star = 1.0;
    double rate = best_tail_rate(lc, t, &r_star);
    if (rate <= 0.0)
        throw numeric_error("atomic_mass_series: no certified tail rate at this time");
    double q = std::exp(-rate);
    long long K = 64;
    const long long cap = closed ? 4000000 : (1 << 14);
    while (true) {
        // tail(K) <= sum_{n > K} (r*/n) e^{-n g(r*)} <= (r*/(K+1)) q^{K+1}/(1-q)
        double tail = r_star / static_cast<double>(K + 1) *
                      std::pow(q, static_cast<double>(K + 1)) / (1.0 - q);
        if (tail < tol) {
            out.value = partial_sum(lc, t, K, closed, sa);
            out.terms = K;
            out.tail_bound = tail;
            return out;
        }
        if (K >= cap)
            throw numeric_error("atomic_mass_series: tolerance not certifiable within "
                                "capacity; t may be too close to the critical time");
        K *= 2;
    }
}

SpectralMeasure spectral_measure(double t, const LimitClass& lc, int n_max, double tol) {
    require_evanescent(lc, "spectral_measure");
    if (t < 0.0) throw validation_error("spectral_measure: negative time");
    if (n_max < 1) throw validation_error("spectral_measure: n_max must be positive");
    if (tol <= 0.0) throw validation_error("spectral_measure: tolerance must be positive");
    double target = atomic_mass(t, lc);
    std::vector<double> tab = mnc_table(lc, t, n_max);
    double partial = 0.0;
    for (double v : tab) partial += v;
    double residual = target - partial;
    if (residual > tol)
        throw numeric_error("spectral_measure: atomic tail beyond n_max exceeds tol; "
                            "increase n_max");
    SpectralMeasure m;
    m.t = t;
    for (int n = 1; n <= n_max; ++n)
        if (tab[n - 1] > 0.0) m.atom[n] = tab[n - 1];
    // Fold the sub-tol atomic tail into the uniform part so total mass is 1.
    m.lebesgue_weight = 1.0 - partial;
    return m;
}

double measure_moment(const SpectralMeasure& m, int n) {
    if (n == 0) return 1.0;
    double s = 0.0;
    for (auto [d, mass] : m.atom) {
        double per_root = mass / d;
        for (int j = 0; j < d; ++j)
            s += per_root * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) * n / d);
    }
    return s;  // the uniform part contributes nothing for n >= 1
}

double mean_distance(double t, const LimitClass& lc, double tol) {
    require_evanescent(lc, "mean_distance");
    if (t < 0.0) throw validation_error("mean_distance: negative time");
    if (tol <= 0.0) throw validation_error("mean_distance: tolerance must be positive");
    double target = atomic_mass(t, lc);
    long long K = 256;
    const long long cap = 1 << 14;
    while (true) {
        std::vector<double> tab = mnc_table(lc, t, static_cast<int>(K));
        double mass = 0.0, dist = 0.0;
        for (long long n = 1; n <= K; ++n) {
            mass += tab[n - 1];
            dist += tab[n - 1] / static_cast<double>(n);
        }
        // Cycles beyond K contribute at most (residual atomic mass)/(K+1);
        // escaped mass contributes zero.
        double tail = std::max(0.0, target - mass) / static_cast<double>(K + 1);
        if (tail < tol) return 1.0 - dist;
        if (K >= cap)
            throw numeric_error("mean_distance: tolerance not certifiable within capacity");
        K *= 2;
    }
}

// --- moment ODE at macroscopic classes --------------------------------------

std::vector<std::vector<int>> integer_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

namespace {

// Adaptive Dormand-Prince 4(5) for the constant linear system y' = A y.
Eigen::VectorXd rk45_linear(const Eigen::MatrixXd& A, Eigen::VectorXd y, double t_end,
                            double tol) {
    if (t_end == 0.0) return y;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                        e4 = 125.0 / 192 - 393.0 / 640,
                        e5 = -2187.0 / 6784 + 92097.0 / 339200, e6 = 11.0 / 84 - 187.0 / 2100,
                        e7 = -1.0 / 40;

    double time = 0.0;
    double h = std::min(0.1, t_end / 10.0);
    int steps = 0;
    while (time < t_end) {
        if (++steps > 2000000) throw numeric_error("ode: step limit exceeded");
        h = std::min(h, t_end - time);
        Eigen::VectorXd k1 = A * y;
        Eigen::VectorXd k2 = A * (y + h * a21 * k1);
        Eigen::VectorXd k3 = A * (y + h * (a31 * k1 + a32 * k2));
        Eigen::VectorXd k4 = A * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        Eigen::VectorXd k5 = A * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        Eigen::VectorXd k6 =
            A * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        Eigen::VectorXd ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Eigen::VectorXd k7 = A * ynew;
        Eigen::VectorXd err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        double scale = 0.0;
        for (int i = 0; i < err.size(); ++i) {
            double s = tol * (1.0 + std::max(std::fabs(y(i)), std::fabs(ynew(i))));
            scale = std::max(scale, std::fabs(err(i)) / s);
        }
        if (scale <= 1.0) {
            time += h;
            y = std::move(ynew);
        }
        double factor = scale <= 0.0 ? 5.0 : 0.9 * std::pow(scale, -0.2);
        h *= std::clamp(factor, 0.2, 5.0);
        if (h < 1e-14 * std::max(1.0, t_end)) throw numeric_error("ode: step underflow");
    }
    return y;
}

struct SymmetricGroup {
    std::vector<std::vector<int>> elems;    // image vectors
    std::vector<std::vector<int>> inverse;  // inverse image vectors
    std::vector<int> cycles;                // number of cycles
    std::vector<int> fixed;                 // number of fixed points
};

SymmetricGroup enumerate_group(int j) {
    SymmetricGroup g;
    std::vector<int> perm(j);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<int> inv(j);
        for (int i = 0; i < j; ++i) inv[perm[i]] = i;
        CycleType ct = cycle_type_of(perm);
        int ncyc = 0;
        for (auto [len, pts] : ct.points_on) ncyc += static_cast<int>(pts / len);
        g.elems.push_back(perm);
        g.inverse.push_back(std::move(inv));
        g.cycles.push_back(ncyc);
        g.fixed.push_back(static_cast<int>(ct.lam(1)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
}

std::vector<int> type_key(const std::vector<int>& perm) {
    CycleType ct = cycle_type_of(perm);
    std::vector<int> key;
    for (auto it = ct.points_on.rbegin(); it != ct.points_on.rend(); ++it)
        for (long long c = 0; c < it->second / it->first; ++c) key.push_back(it->first);
    return key;
}

// Jump coefficient of sigma in the moment hierarchy at a macroscopic class:
// alpha^(cycles - fixed - 1) (1-alpha)^fixed prod lambda(i)^(# i-cycles).
// At alpha = 0 only single-nontrivial-cycle elements survive, with weight
// lambda(cycle length).
double jump_coeff(const LimitClass& lc, const std::vector<int>& perm, int ncyc, int nfix) {
    int j = static_cast<int>(perm.size());
    if (lc.alpha == 0.0) {
        if (ncyc - nfix != 1) return 0.0;
        int len = j - nfix;
        return lc.lam(len);
    }
    CycleType ct = cycle_type_of(perm);
    double coeff = std::pow(lc.alpha, ncyc - nfix - 1) * std::pow(1.0 - lc.alpha, nfix);
    for (auto [len, pts] : ct.points_on) {
        if (len < 2) continue;
        long long count = pts / len;
        coeff *= std::pow(lc.lam(len), static_cast<double>(count));
    }
    return coeff;
}

}  // namespace

OdeResult ode_evolve(const LimitClass& lc, int k_max, double t, double tol) {
    lc.validate();
    if (k_max < 1) throw validation_error("ode: k_max must be positive");
    if (k_max > 8) throw capacity_error("ode: k_max capped at 8");
    if (t < 0.0) throw validation_error("ode: negative time");
    if (tol <= 0.0) throw validation_error("ode: tolerance must be positive");

    OdeResult out;
    out.t = t;
    out.k_max = k_max;
    out.level.resize(k_max);

    for (int j = 1; j <= k_max; ++j) {
        std::vector<std::vector<int>> types = integer_partitions(j);
        std::map<std::vector<int>, int> type_index;
        for (int i = 0; i < static_cast<int>(types.size()); ++i) type_index[types[i]] = i;
        SymmetricGroup g = enumerate_group(j);

        // Representative of each type: consecutive cycles of the given lengths.
        std::vector<std::vector<int>> reps;
        for (const auto& ty : types) {
            std::vector<int> rep(j);
            int off = 0;
            for (int len : ty) {
                for (int i = 0; i < len; ++i) rep[off + i] = off + (i + 1) % len;
                off += len;
            }
            reps.push_back(std::move(rep));
        }

        int nt = static_cast<int>(types.size());
        double diag = lc.alpha == 0.0
                          ? -static_cast<double>(j)
                          : (std::pow(1.0 - lc.alpha, j) - 1.0) / lc.alpha;
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nt, nt);
        std::vector<int> tau(j);
        for (int a = 0; a < nt; ++a) {
            A(a, a) += diag;
            const std::vector<int>& sigma0 = reps[a];
            int c0 = 0;
            {
                CycleType ct = cycle_type_of(sigma0);
                for (auto [len, pts] : ct.points_on) c0 += static_cast<int>(pts / len);
            }
            for (std::size_t s = 0; s < g.elems.size(); ++s) {
                if (g.fixed[s] == j) continue;  // identity handled by the diagonal
                double coeff = jump_coeff(lc, g.elems[s], g.cycles[s], g.fixed[s]);
                if (coeff == 0.0) continue;
                for (int x = 0; x < j; ++x) tau[x] = g.inverse[s][sigma0[x]];
                CycleType ct = cycle_type_of(tau);
                int ctau = 0;
                for (auto [len, pts] : ct.points_on) ctau += static_cast<int>(pts / len);
                // geodesic condition through the Cayley metric
                if ((j - g.cycles[s]) + (j - ctau) != j - c0) continue;
                A(a, type_index.at(type_key(tau))) += coeff;
            }
        }

        Eigen::VectorXd y0 = Eigen::VectorXd::Zero(nt);
        std::vector<int> ones(j, 1);
        y0(type_index.at(ones)) = 1.0;
        Eigen::VectorXd y = rk45_linear(A, y0, t, tol);
        for (int i = 0; i < nt; ++i) out.level[j - 1][types[i]] = y(i);
    }
    return out;
}

double ode_moment(const OdeResult& r, std::vector<int> cycle_type) {
    std::sort(cycle_type.begin(), cycle_type.end(), std::greater<int>());
    int total = 0;
    for (int c : cycle_type) {
        if (c < 1) throw validation_error("ode_moment: cycle lengths start at 1");
        total += c;
    }
    if (total < 1 || total > r.k_max)
        throw validation_error("ode_moment: level outside the computed range");
    auto it = r.level[total - 1].find(cycle_type);
    if (it == r.level[total - 1].end())
        throw validation_error("ode_moment: unknown cycle type");
    return it->second;
}

// --- diagram limits -----------------------------------------------------------

double generator_limit(const Partition& p, const LimitClass& lc) {
    lc.validate();
    if (p.k() == 0) throw validation_error("generator_limit: empty diagram");
    if (!irreducible(p))
        throw validation_error("generator_limit: diagram must be irreducible");
    ParureClass pc = classify_parure(p);
    switch (pc.kind) {
        case ParureKind::NotParure: return 0.0;
        case ParureKind::Necklace:
            return pc.true_length == 1 ? -1.0 : lc.lam(pc.true_length);
        case ParureKind::Chain: {
            double s = 0.0;
            for (int i = 2; i <= pc.true_length; ++i) s += lc.lam(i);
            return 1.0 - s;
        }
        case ParureKind::MixedParure: break;  // unreachable for irreducible diagrams
    }
    throw numeric_error("generator_limit: unexpected classification");
}

double log_cumulant(const Partition& p, const LimitClass& lc) {
    require_evanescent(lc, "log_cumulant");
    int k = p.k();
    if (k == 0) throw validation_error("log_cumulant: empty diagram");

    // Strip exact identity columns (standalone {i, i'} blocks).
    std::vector<int> rest;
    for (int i = 1; i <= k; ++i) {
        int b = p.block_of(i);
        const auto& blk = p.blocks()[b];
        bool exact_id = blk.size() == 2 && p.block_of(-i) == b;
        if (!exact_id) rest.push_back(i);
    }
    if (rest.empty()) return -static_cast<double>(k);

    Partition q = extract_columns(p, rest);
    if (!irreducible(q)) return 0.0;  // not weakly irreducible

    EarsHead eh = ears_and_head(q);
    double sign = eh.ears.size() % 2 == 0 ? 1.0 : -1.0;
    if (eh.head.k() == 0) return sign;

    ParureClass pc = classify_parure(eh.head);
    switch (pc.kind) {
        case ParureKind::Necklace:
            return sign * (pc.true_length == 1 ? 1.0 : lc.lam(pc.true_length));
        case ParureKind::Chain: {
            double s = 0.0;
            for (int i = 2; i <= pc.true_length; ++i) s += lc.lam(i);
            return sign * (1.0 - s);
        }
        default: return 0.0;
    }
}

}  // namespace symfield
