#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "symfield/errors.hpp"
#include "symfield/limit.hpp"
#include "symfield/master.hpp"

using namespace symfield;

namespace {

LassoWord make_word(std::map<std::string, double> areas,
                    std::vector<std::pair<std::string, int>> letters) {
    LassoWord w;
    w.areas = std::move(areas);
    for (auto& [f, e] : letters) w.word.push_back({f, e});
    return w;
}

}  // namespace

TEST_CASE("word validation") {
    LassoWord w = make_word({{"a", 0.5}}, {{"a", 2}});
    CHECK_THROWS_AS(w.validate(), validation_error);

    w = make_word({{"a", 0.5}}, {{"b", 1}});
    CHECK_THROWS_AS(w.validate(), validation_error);

    w = make_word({{"", 0.5}}, {});
    CHECK_THROWS_AS(w.validate(), validation_error);

    w = make_word({{"a", -0.1}}, {{"a", 1}});
    CHECK_THROWS_AS(w.validate(), validation_error);

    w = make_word({{"a", 0.5}}, {{"a", -1}});
    CHECK_NOTHROW(w.validate());
}

TEST_CASE("trivial and single-letter loops") {
    CHECK(analytic_eval(make_word({}, {})) == 1.0);
    CHECK(analytic_eval(make_word({{"a", 0.7}}, {{"a", 1}})) ==
          doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
    CHECK(analytic_eval(make_word({{"a", 0.7}}, {{"a", -1}})) ==
          doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
}

TEST_CASE("cyclically adjacent inverse pairs cancel") {
    LassoWord w = make_word({{"a", 0.4}, {"b", 0.9}},
                            {{"a", 1}, {"b", 1}, {"b", -1}, {"a", -1}});
    CHECK(analytic_eval(w) == 1.0);

    // Wrap-around cancellation leaves a pure power of b.
    LassoWord v = make_word({{"a", 0.4}, {"b", 0.9}},
                            {{"b", 1}, {"a", 1}, {"a", -1}, {"b", 1}});
    double want = mnc(1, 0.9, v.cls) + mnc(2, 0.9, v.cls);
    CHECK(analytic_eval(v) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("powers of one face collect the divisor moments") {
    for (int m : {2, 3, 4, 6}) {
        LassoWord w = make_word({{"a", 0.6}}, {});
        for (int i = 0; i < m; ++i) w.word.push_back({"a", 1});
        double want = 0.0;
        for (int d = 1; d <= m; ++d)
            if (m % d == 0) want += mnc(d, 0.6, w.cls);
        CHECK(analytic_eval(w) == doctest::Approx(want).epsilon(1e-13));

        for (Letter& l : w.word) l.exponent = -1;  // orientation is immaterial
        CHECK(analytic_eval(w) == doctest::Approx(want).epsilon(1e-13));
    }
}

TEST_CASE("faces crossed once factor out as simple loops") {
    LassoWord w = make_word({{"a", 0.3}, {"b", 0.5}, {"c", 0.2}},
                            {{"a", 1}, {"b", 1}, {"c", 1}});
    CHECK(analytic_eval(w) == doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

    LassoWord v = make_word({{"a", 0.6}, {"b", 0.4}}, {{"a", 1}, {"a", 1}, {"b", 1}});
    double square = mnc(1, 0.6, v.cls) + mnc(2, 0.6, v.cls);
    CHECK(analytic_eval(v) == doctest::Approx(std::exp(-0.4) * square).epsilon(1e-13));
}

TEST_CASE("five-letter composite loop has the known value") {
    LassoWord w = make_word({{"a", 0.3}, {"b", 0.5}, {"c", 0.2}},
                            {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}, {"c", 1}});
    CHECK(analytic_eval(w) == doctest::Approx(0.528592937046008).epsilon(1e-12));

    // Same value written out through the two-face reduction.
    double s = 0.3, t = 0.5, u = 0.2;
    double inner = std::exp(-2.0 * t) + std::exp(-t) * (1.0 - std::exp(-t)) * std::exp(-s) +
                   mnc(2, t, w.cls) * std::exp(-2.0 * s);
    CHECK(analytic_eval(w) == doctest::Approx(std::exp(-u) * inner).epsilon(1e-14));
}

TEST_CASE("renaming faces does not change the value") {
    LassoWord w = make_word({{"a", 0.3}, {"b", 0.5}, {"c", 0.2}},
                            {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}, {"c", 1}});
    LassoWord v = make_word({{"x", 0.3}, {"y", 0.5}, {"z", 0.2}},
                            {{"x", 1}, {"y", 1}, {"x", -1}, {"y", 1}, {"z", 1}});
    CHECK(analytic_eval(w) == analytic_eval(v));
}

TEST_CASE("words outside the reduction rules are refused") {
    // Commutator: both faces appear with opposite exponents.
    LassoWord comm = make_word({{"a", 0.3}, {"b", 0.5}},
                               {{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}});
    CHECK_THROWS_AS(analytic_eval(comm), not_reducible_error);

    LassoWord six = make_word({{"a", 0.3}, {"b", 0.5}},
                              {{"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}, {"a", 1}, {"b", 1}});
    CHECK_THROWS_AS(analytic_eval(six), not_reducible_error);

    LimitClass half;
    half.alpha = 0.5;
    half.lambda[2] = 0.5;
    LassoWord macro = make_word({{"a", 0.3}}, {{"a", 1}});
    macro.cls = half;
    CHECK_THROWS_AS(analytic_eval(macro), validation_error);
}

TEST_CASE("library words evaluate analytically and match Monte Carlo") {
    for (const auto& [name, w] : word_library()) {
        INFO("word: ", name);
        double exact = analytic_eval(w);
        CHECK(exact > 0.0);
        CHECK(exact <= 1.0);

        const long long N = 200;
        Estimate e = mc_wilson(w, N, 1.0, 20000, 31, 0);
        double band = 4.0 * e.std_error + 5.0 / static_cast<double>(N);
        CHECK(std::fabs(e.mean - exact) <= band);
    }
}

TEST_CASE("single-letter Monte Carlo obeys the exact finite-N law") {
    LassoWord w = make_word({{"a", 0.7}}, {{"a", 1}});

    const long long N = 100;
    Estimate e = mc_wilson(w, N, 1.0, 50000, 7, 0);
    double law = 1.0 / N + (1.0 - 1.0 / N) * std::exp(-0.7);
    CHECK(std::fabs(e.mean - law) <= 4.0 * e.std_error);

    // The covering clock runs each face walk to area * N / (N-1).
    const long long M = 50;
    double scale = static_cast<double>(M) / static_cast<double>(M - 1);
    Estimate s = mc_wilson(w, M, scale, 30000, 8, 0);
    double scaled_law = 1.0 / M + (1.0 - 1.0 / M) * std::exp(-0.7 * scale);
    CHECK(std::fabs(s.mean - scaled_law) <= 4.0 * s.std_error);
}

TEST_CASE("wilson samples are deterministic per replica") {
    LassoWord w = make_word({{"a", 0.3}, {"b", 0.5}},
                            {{"a", 1}, {"b", 1}, {"a", -1}, {"b", 1}});
    std::vector<double> serial = wilson_samples(w, 40, 1.0, 400, 99, 1);
    std::vector<double> parallel = wilson_samples(w, 40, 1.0, 400, 99, 4);
    CHECK(serial == parallel);
    for (double v : serial) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    CHECK_THROWS_AS(wilson_samples(w, 1, 1.0, 10, 1, 1), validation_error);
    CHECK_THROWS_AS(wilson_samples(w, 40, 1.0, 0, 1, 1), validation_error);
    CHECK_THROWS_AS(wilson_samples(w, 40, 0.0, 10, 1, 1), validation_error);
}
