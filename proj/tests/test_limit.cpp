#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "symfield/errors.hpp"
#include "symfield/limit.hpp"
#include "symfield/partition.hpp"

using namespace symfield;

namespace {

// Closed form for a class supported on j-cycles with weight 1: cycles of
// size n = 1 + u (j-1) carry mass e^{-nt} t^u n^{u-1} / u!, others nothing.
double single_length_moment(int n, double t, int j) {
    if ((n - 1) % (j - 1) != 0) return 0.0;
    int u = (n - 1) / (j - 1);
    return std::exp(-n * t) * std::pow(t, u) * std::pow(double(n), u - 1) / std::tgamma(u + 1.0);
}

LimitClass single_length_class(int j) {
    LimitClass lc;
    lc.lambda[j] = 1.0;
    return lc;
}

LimitClass generic_class() {
    LimitClass lc;
    lc.lambda[2] = 0.3;
    lc.lambda[3] = 0.45;
    return lc;
}

}  // namespace

TEST_CASE("cycle moments of single-length classes take the closed form") {
    for (int j : {2, 3}) {
        LimitClass lc = single_length_class(j);
        for (double t : {0.3, 1.0, 2.0}) {
            std::vector<double> tab = mnc_table(lc, t, 8);
            for (int n = 1; n <= 8; ++n) {
                double want = single_length_moment(n, t, j);
                CHECK(tab[n - 1] == doctest::Approx(want).epsilon(1e-12));
                CHECK(mnc(n, t, lc) == doctest::Approx(want).epsilon(1e-12));
            }
        }
    }
    // Spot values: m_2(t) = t e^{-2t} and m_3(1) = 1.5 e^{-3} for transpositions.
    LimitClass tr = transposition_limit();
    CHECK(mnc(2, 0.7, tr) == doctest::Approx(0.7 * std::exp(-1.4)).epsilon(1e-13));
    CHECK(mnc(3, 1.0, tr) == doctest::Approx(1.5 * std::exp(-3.0)).epsilon(1e-13));
}

TEST_CASE("cycle moments at t = 0 form the point mass on fixed points") {
    std::vector<double> tab = mnc_table(transposition_limit(), 0.0, 5);
    CHECK(tab[0] == 1.0);
    for (int n = 2; n <= 5; ++n) CHECK(tab[n - 1] == 0.0);
}

TEST_CASE("deep tails survive in log space") {
    // Naive products of e^{-nt} t^{n-1} factors underflow long before n = 900;
    // the table must still carry the mass there at full relative precision.
    LimitClass tr = transposition_limit();
    std::vector<double> tab = mnc_table(tr, 1.05, 900);
    CHECK(tab[899] > 0.0);
    double logw = -900.0 * 1.05 + 899.0 * std::log(1.05) + 898.0 * std::log(900.0) -
                  std::lgamma(900.0);
    CHECK(std::log(tab[899]) == doctest::Approx(logw).epsilon(1e-10));
}

TEST_CASE("cycle moments require a vanishing macroscopic fraction") {
    LimitClass lc;
    lc.alpha = 0.5;
    lc.lambda[2] = 0.5;
    CHECK_THROWS_AS(mnc_table(lc, 1.0, 4), validation_error);
    CHECK_THROWS_AS(mean_distance(0.5, lc, 1e-9), validation_error);
    CHECK_THROWS_AS(spectral_measure(0.5, lc, 16, 1e-9), validation_error);
}

TEST_CASE("critical time of the transition") {
    CHECK(critical_time(transposition_limit()) == 1.0);
    CHECK(critical_time(single_length_class(3)) == 0.5);

    LimitClass mixed;
    mixed.lambda[2] = 0.5;
    mixed.lambda[3] = 0.5;
    CHECK(critical_time(mixed) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    LimitClass leaky;
    leaky.lambda[2] = 0.7;
    CHECK(critical_time(leaky) == 0.0);
}

TEST_CASE("atomic mass is one through the critical time and drops after") {
    LimitClass tr = transposition_limit();
    for (double t : {0.1, 0.5, 0.9, 1.0}) CHECK(atomic_mass(t, tr) == 1.0);

    double m12 = atomic_mass(1.2, tr);
    CHECK(m12 == doctest::Approx(0.686301668959).epsilon(1e-9));
    CHECK(m12 < 1.0);
    CHECK(m12 > atomic_mass(1.5, tr));
    CHECK(atomic_mass(1.5, tr) > atomic_mass(2.0, tr));
    CHECK(atomic_mass(2.0, tr) > 0.0);
}

TEST_CASE("certified series mass agrees with the fixed point") {
    LimitClass tr = transposition_limit();

    SeriesMass away = atomic_mass_series(1.2, tr, 1e-7);
    CHECK(away.tail_bound <= 1e-7);
    CHECK(away.terms > 0);
    CHECK(std::fabs(away.value - atomic_mass(1.2, tr)) <= 1e-7);

    // At the critical time the tail decays like K^{-1/2}; the extrapolated
    // sum still has to land on 1.
    SeriesMass at = atomic_mass_series(1.0, tr, 1e-8);
    CHECK(std::fabs(at.value - 1.0) <= 1e-6);

    LimitClass mixed;
    mixed.lambda[2] = 0.5;
    mixed.lambda[3] = 0.5;
    SeriesMass mm = atomic_mass_series(1.0, mixed, 1e-7);
    CHECK(std::fabs(mm.value - atomic_mass(1.0, mixed)) <= 2e-7);
}

TEST_CASE("spectral measure bookkeeping") {
    LimitClass tr = transposition_limit();

    SpectralMeasure sub = spectral_measure(0.5, tr, 256, 1e-10);
    double total = sub.lebesgue_weight;
    for (auto [n, mass] : sub.atom) total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sub.lebesgue_weight <= 1e-10);  // below the transition all mass is atomic
    CHECK(sub.atom.at(1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    SpectralMeasure super = spectral_measure(1.5, tr, 2048, 1e-10);
    total = super.lebesgue_weight;
    for (auto [n, mass] : super.atom) total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(super.lebesgue_weight > 0.3);
    for (auto [n, mass] : super.atom)
        CHECK(mass == doctest::Approx(mnc(n, 1.5, tr)).epsilon(1e-12));

    // Moments of the measure are divisor sums of the atom masses; the
    // uniform part integrates z^n to zero.
    for (int n = 1; n <= 12; ++n) {
        double want = 0.0;
        for (auto [d, mass] : super.atom)
            if (n % d == 0) want += mass;
        CHECK(measure_moment(super, n) == doctest::Approx(want).epsilon(1e-9));
    }
    CHECK(measure_moment(super, 0) == 1.0);

    CHECK_THROWS_AS(spectral_measure(1.5, tr, 8, 1e-10), numeric_error);
    CHECK_THROWS_AS(spectral_measure(1.5, tr, 0, 1e-10), validation_error);
    CHECK_THROWS_AS(spectral_measure(1.5, tr, 16, 0.0), validation_error);
}

TEST_CASE("mean distance grows like t/2 up to the critical time") {
    LimitClass tr = transposition_limit();
    for (double t : {0.25, 0.5, 0.9})
        CHECK(mean_distance(t, tr, 1e-9) == doctest::Approx(t / 2.0).epsilon(1e-8));

    // Beyond the transition: still 1 - sum_n m_n / n, now with escaped mass.
    double d12 = mean_distance(1.2, tr, 1e-9);
    SpectralMeasure m = spectral_measure(1.2, tr, 4096, 1e-9);
    double s = 0.0;
    for (auto [n, mass] : m.atom) s += mass / n;
    CHECK(d12 == doctest::Approx(1.0 - s).epsilon(1e-7));
    CHECK(d12 > 0.5);  // past the transition it keeps growing, but below t/2
    CHECK(mean_distance(2.0, tr, 1e-9) > d12);
    CHECK(mean_distance(2.0, tr, 1e-9) < 1.0);
}

TEST_CASE("moment hierarchy factorizes over cycles when alpha is zero") {
    LimitClass mixed;
    mixed.lambda[2] = 0.5;
    mixed.lambda[3] = 0.5;
    for (const LimitClass& lc : {transposition_limit(), mixed}) {
        for (double t : {0.3, 1.0}) {
            OdeResult r = ode_evolve(lc, 6, t);
            for (int k = 1; k <= 6; ++k) {
                for (const std::vector<int>& type : integer_partitions(k)) {
                    double want = 1.0;
                    for (int c : type) want *= mnc(c, t, lc);
                    CHECK(std::fabs(ode_moment(r, type) - want) <= 1e-8);
                }
            }
        }
    }
}

TEST_CASE("moment hierarchy at a macroscopic fixed fraction") {
    LimitClass half;
    half.alpha = 0.5;
    half.lambda[2] = 0.5;
    OdeResult r = ode_evolve(half, 3, 1.0);
    // Two marked fixed points decay at rate 2 - 2 alpha + alpha^2 = 1.5.
    CHECK(ode_moment(r, {1, 1}) == doctest::Approx(std::exp(-1.5)).epsilon(1e-9));
    // Lookup normalizes the cycle type, so order never matters.
    CHECK(ode_moment(r, {1, 2}) == ode_moment(r, {2, 1}));

    for (int k = 1; k <= 3; ++k)
        CHECK(r.level[k - 1].size() == integer_partitions(k).size());

    CHECK_THROWS_AS(ode_evolve(half, 9, 1.0), capacity_error);
    CHECK_THROWS_AS(ode_moment(r, {4}), validation_error);
    CHECK_THROWS_AS(ode_moment(r, {0, 1}), validation_error);
}

TEST_CASE("integer partition enumeration") {
    const std::vector<std::size_t> counts = {1, 2, 3, 5, 7, 11, 15, 22};
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::vector<int>> parts = integer_partitions(n);
        CHECK(parts.size() == counts[n - 1]);
        for (const std::vector<int>& p : parts) {
            int total = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                total += p[i];
                if (i + 1 < p.size()) CHECK(p[i] >= p[i + 1]);
            }
            CHECK(total == n);
        }
    }
}

TEST_CASE("generator limits on small diagrams") {
    LimitClass tr = transposition_limit();
    LimitClass gen = generic_class();

    CHECK(generator_limit(full_partition(2), tr) == -1.0);           // length-1 necklace
    CHECK(generator_limit(perm_partition({2, 1}), tr) == 1.0);       // necklace of length 2
    CHECK(generator_limit(perm_partition({2, 1}), gen) == 0.3);      // picks lambda(2)
    CHECK(generator_limit(perm_partition({2, 3, 1}), gen) == 0.45);  // picks lambda(3)

    Partition chain1(2, {{1, 2}, {-1, -2}});
    CHECK(generator_limit(chain1, tr) == 1.0);
    Partition chain2(2, {{1, -2}, {2}, {-1}});
    CHECK(generator_limit(chain2, tr) == doctest::Approx(0.0));
    CHECK(generator_limit(chain2, gen) == doctest::Approx(0.7).epsilon(1e-15));

    Partition neither(2, {{1, 2}, {-1}, {-2}});
    CHECK(generator_limit(neither, tr) == 0.0);

    CHECK_THROWS_AS(generator_limit(identity_partition(2), tr), validation_error);
}

TEST_CASE("log-cumulants reproduce the full two-column table") {
    LimitClass tr = transposition_limit();
    for (int k = 1; k <= 5; ++k)
        CHECK(log_cumulant(identity_partition(k), tr) == doctest::Approx(-k).epsilon(1e-12));

    std::vector<std::pair<Partition, double>> want = {
        {identity_partition(2), -2.0},
        {full_partition(2), 1.0},
        {perm_partition({2, 1}), 1.0},
        {Partition(2, {{1, 2}, {-1, -2}}), 1.0},
        {Partition(2, {{1, -1}, {2}, {-2}}), 1.0},
        {Partition(2, {{1}, {-1}, {2, -2}}), 1.0},
        {Partition(2, {{1, 2, -1}, {-2}}), -1.0},
        {Partition(2, {{1, 2, -2}, {-1}}), -1.0},
        {Partition(2, {{1, -1, -2}, {2}}), -1.0},
        {Partition(2, {{1}, {2, -1, -2}}), -1.0},
        {Partition(2, {{1, 2}, {-1}, {-2}}), 0.0},
        {Partition(2, {{1}, {2}, {-1, -2}}), 0.0},
        {Partition(2, {{1}, {2}, {-1}, {-2}}), 0.0},
        {Partition(2, {{1, -2}, {2}, {-1}}), 0.0},  // chain of length 2: 1 - lambda(2)
        {Partition(2, {{2, -1}, {1}, {-2}}), 0.0},
    };

    std::vector<Partition> all = enumerate_partitions(2, DiagramKind::All);
    REQUIRE(all.size() == 15);
    REQUIRE(want.size() == 15);
    for (const Partition& p : all) {
        auto it = std::find_if(want.begin(), want.end(),
                               [&](const auto& w) { return w.first == p; });
        REQUIRE(it != want.end());
        CHECK(log_cumulant(p, tr) == doctest::Approx(it->second).epsilon(1e-12));
    }

    // The chain-of-length-2 zeros above are 1 - lambda(2) in general.
    CHECK(log_cumulant(Partition(2, {{1, -2}, {2}, {-1}}), generic_class()) ==
          doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("log-cumulants sum to the generator limit over compatible refinements") {
    LimitClass gen = generic_class();
    std::vector<Partition> all = enumerate_partitions(2, DiagramKind::All);
    int checked = 0;
    for (const Partition& p : all) {
        if (!irreducible(p)) continue;
        double sum = 0.0;
        for (const Partition& q : all)
            if (finer_compatible(q, p)) sum += log_cumulant(q, gen);
        CHECK(sum == doctest::Approx(generator_limit(p, gen)).epsilon(1e-12));
        ++checked;
    }
    CHECK(checked > 5);
}
