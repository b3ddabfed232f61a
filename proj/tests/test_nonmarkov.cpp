#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kdq/nonmarkov.hpp"
#include "kdq/sampling.hpp"

using namespace kdq;

namespace {

TimeGrid grid_of(double tMax, std::size_t n) { return TimeGrid{tMax, n}; }

}  // namespace

TEST_CASE("time grid validation") {
    CHECK_THROWS_AS(grid_of(10.0, 8).validate(), ParamError);
    CHECK_THROWS_AS(grid_of(0.0, 64).validate(), ParamError);
    const auto g = grid_of(30.0, 16);
    CHECK(g.time(0) == doctest::Approx(0.0));
    CHECK(g.time(15) == doctest::Approx(30.0));
}

TEST_CASE("positive_variation on hand sequences") {
    const auto g5 = grid_of(4.0, 16);

    std::vector<double> dec(16);
    for (int i = 0; i < 16; ++i) dec[i] = 1.0 - 0.05 * i;
    CHECK(positive_variation(dec, grid_of(4.0, 16)).total == doctest::Approx(0.0));
    CHECK(positive_variation(dec, grid_of(4.0, 16)).ascendingIntervals.empty());

    // 1.0 -> 0.2 -> 0.6 -> 0.1 -> 0.4 rises by 0.4 + 0.3
    std::vector<double> seq = {1.0, 0.2, 0.6, 0.1, 0.4};
    TimeGrid g{4.0, 16};
    // pad to the minimum grid length with a flat tail
    seq.resize(16, 0.4);
    const auto r = positive_variation(seq, g);
    CHECK(r.total == doctest::Approx(0.7));
    REQUIRE(r.ascendingIntervals.size() == 2);
    CHECK(r.ascendingIntervals[0].first == doctest::Approx(g.time(1)));
    CHECK(r.ascendingIntervals[0].second == doctest::Approx(g.time(2)));
    CHECK(r.ascendingIntervals[1].first == doctest::Approx(g.time(3)));
    CHECK(r.ascendingIntervals[1].second == doctest::Approx(g.time(4)));
}

TEST_CASE("positive_variation of a rectified sine approaches the lobe sum") {
    constexpr double kPi = 3.14159265358979323846;
    const double period = 2.0 * kPi / 0.6;
    const auto g = grid_of(period, 8192);
    std::vector<double> v(g.n);
    for (std::size_t i = 0; i < g.n; ++i) v[i] = 0.25 * std::abs(std::sin(0.6 * g.time(i)));
    CHECK(positive_variation(v, g).total == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("positive_variation shift and scale behaviour") {
    Rng rng(211);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const auto g = grid_of(1.0, 64);
    std::vector<double> v(g.n);
    for (auto& x : v) x = uni(rng);
    const double base = positive_variation(v, g).total;

    std::vector<double> shifted = v, scaled = v;
    for (auto& x : shifted) x += 3.7;
    for (auto& x : scaled) x *= 2.5;
    CHECK(positive_variation(shifted, g).total == doctest::Approx(base).epsilon(1e-12));
    CHECK(positive_variation(scaled, g).total == doctest::Approx(2.5 * base).epsilon(1e-12));

    // zero variation exactly characterizes non-increasing sequences
    std::vector<double> sorted = v;
    std::sort(sorted.rbegin(), sorted.rend());
    CHECK(positive_variation(sorted, g).total == 0.0);
    CHECK(base > 0.0);
}

TEST_CASE("dephasing trajectory follows R/2") {
    const ChannelModel model(ChannelKind::Dephase1Q, OhmicParams{1.0, 1.0});
    const auto g = grid_of(10.0, 256);
    const auto traj = trajectory(model, fiducial_state(ChannelKind::Dephase1Q), g,
                                 BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q)));
    for (std::size_t i = 0; i < g.n; ++i) {
        const double r = dephase_factor(g.time(i), OhmicParams{1.0, 1.0});
        CHECK(traj.ckd[i] == doctest::Approx(0.5 * r).epsilon(1e-9));
        CHECK(traj.l1[i] == doctest::Approx(r).epsilon(1e-9));
        CHECK(traj.nc[i] == doctest::Approx(0.5 * (1.0 + r)).epsilon(1e-9));
        if (i > 0) CHECK(traj.ckd[i] < traj.ckd[i - 1]);
    }
}

TEST_CASE("strong-coupling damping trajectory revives") {
    const LorentzParams p{5.0, 1.0, 0.0};
    const ChannelModel model(ChannelKind::Damp1Q, p);
    const auto g = grid_of(10.0, 1024);
    const auto traj = trajectory(model, fiducial_state(ChannelKind::Damp1Q), g,
                                 BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(traj.ckd[i] == doctest::Approx(0.5 * std::abs(b_analytic(g.time(i), p))).epsilon(1e-9));
    CHECK(positive_variation(traj.ckd, g).total > 1e-2);
}

TEST_CASE("two-qubit dephasing trajectory starts at zero") {
    const TwoQubitDephasingParams p{0.2, 0.4, 0.0, {1.0, 1.0}};
    const ChannelModel model(ChannelKind::Dephase2Q, p);
    const auto g = grid_of(15.0, 256);
    const auto traj = trajectory(model, fiducial_state(ChannelKind::Dephase2Q), g,
                                 BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase2Q)));
    CHECK(traj.ckd[0] == doctest::Approx(0.0));
    for (std::size_t i = 0; i < g.n; i += 17) {
        const double r = dephase_factor(g.time(i), p.ohmic);
        const double want = 0.25 * std::pow(r, 4) * std::abs(std::sin(0.6 * g.time(i)));
        CHECK(traj.ckd[i] == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("optimized trajectory dominates any fixed basis") {
    const ChannelModel model(ChannelKind::Damp1Q, LorentzParams{1.0, 1.0, 0.5});
    const auto g = grid_of(4.0, 16);
    const auto rho0 = fiducial_state(ChannelKind::Damp1Q);
    const auto fixed = trajectory(model, rho0, g,
                                  BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    const auto opt = trajectory(model, rho0, g, BasisMode::optimize());
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK(opt.ckd[i] >= fixed.ckd[i] - 1e-9);
        const double wantOpt = 0.5 * std::abs(b_analytic(g.time(i), LorentzParams{1.0, 1.0, 0.5}));
        CHECK(opt.ckd[i] == doctest::Approx(wantOpt).epsilon(1e-7));
    }
}

TEST_CASE("optimized two-qubit dephasing absorbs the dynamical phase") {
    // maximizing over the second product basis rotates e^{-i(h1+h2)t} away,
    // leaving R^4/4 with no oscillation
    const TwoQubitDephasingParams p{0.2, 0.4, 0.0, {1.0, 1.0}};
    const ChannelModel model(ChannelKind::Dephase2Q, p);
    const auto g = grid_of(10.0, 32);
    OptimizerConfig cfg;
    cfg.gridPoints = 8;
    const auto traj = trajectory(model, fiducial_state(ChannelKind::Dephase2Q), g,
                                 BasisMode::optimize(), cfg);
    for (std::size_t i = 0; i < g.n; ++i) {
        const double r = dephase_factor(g.time(i), p.ohmic);
        CHECK(traj.ckd[i] == doctest::Approx(0.25 * std::pow(r, 4)).epsilon(1e-9));
    }
}

TEST_CASE("n_ckd thresholds for dephasing") {
    const auto g = grid_of(30.0, 2048);
    const BasisMode mode = BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q));
    const auto rho0 = fiducial_state(ChannelKind::Dephase1Q);

    const auto markov = n_ckd(ChannelModel(ChannelKind::Dephase1Q, OhmicParams{1.0, 1.0}),
                              rho0, g, mode);
    CHECK(markov.nCkd <= 1e-8);
    CHECK(markov.ascendingIntervals.empty());

    const auto non = n_ckd(ChannelModel(ChannelKind::Dephase1Q, OhmicParams{3.0, 1.0}),
                           rho0, g, mode);
    CHECK(non.nCkd > 1e-4);
    CHECK(!non.ascendingIntervals.empty());
    CHECK(non.nCl1 == doctest::Approx(2.0 * non.nCkd).epsilon(1e-2));
}

TEST_CASE("n_ckd thresholds for damping on resonance") {
    const auto g = grid_of(30.0, 2048);
    const BasisMode mode = BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q));
    const auto rho0 = fiducial_state(ChannelKind::Damp1Q);

    const auto weak = n_ckd(ChannelModel(ChannelKind::Damp1Q, LorentzParams{1.0, 4.0, 0.0}),
                            rho0, g, mode);
    CHECK(weak.nCkd <= 1e-8);

    const auto strong = n_ckd(ChannelModel(ChannelKind::Damp1Q, LorentzParams{1.0, 0.2, 0.0}),
                              rho0, g, mode);
    CHECK(strong.nCkd > 1e-4);
}

TEST_CASE("dephasing analytic fast path") {
    CHECK(n_ckd_dephasing_analytic({1.0, 1.0}, 30.0) == doctest::Approx(0.0));
    CHECK(n_ckd_dephasing_analytic({2.0, 1.0}, 30.0) == doctest::Approx(0.0));

    const double analytic = n_ckd_dephasing_analytic({3.0, 1.0}, 30.0);
    CHECK(analytic > 1e-3);

    const auto g = grid_of(30.0, 10000);
    const auto measured = n_ckd(ChannelModel(ChannelKind::Dephase1Q, OhmicParams{3.0, 1.0}),
                                fiducial_state(ChannelKind::Dephase1Q), g,
                                BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q)));
    CHECK(measured.nCkd == doctest::Approx(analytic).epsilon(5e-3));
}

TEST_CASE("damping analytic fast path") {
    CHECK(n_ckd_damping_analytic({1.0, 2.0, 0.0}, 30.0) == doctest::Approx(0.0));
    CHECK(n_ckd_damping_analytic({1.0, 2.5, 0.0}, 30.0) == doctest::Approx(0.0));

    const LorentzParams strong{5.0, 1.0, 0.0};
    const double analytic = n_ckd_damping_analytic(strong, 30.0);
    CHECK(analytic > 0.01);

    const auto g = grid_of(30.0, 8192);
    const auto measured = n_ckd(ChannelModel(ChannelKind::Damp1Q, strong),
                                fiducial_state(ChannelKind::Damp1Q), g,
                                BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    CHECK(measured.nCkd == doctest::Approx(analytic).epsilon(5e-3));

    // faster oscillation packs more revivals into the window
    const auto few = n_ckd(ChannelModel(ChannelKind::Damp1Q, LorentzParams{5.0, 1.0, 0.0}),
                           fiducial_state(ChannelKind::Damp1Q), g,
                           BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    const auto many = n_ckd(ChannelModel(ChannelKind::Damp1Q, LorentzParams{20.0, 1.0, 0.0}),
                            fiducial_state(ChannelKind::Damp1Q), g,
                            BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    CHECK(many.ascendingIntervals.size() > few.ascendingIntervals.size());
}

TEST_CASE("grid refinement stabilizes the measure") {
    const std::vector<ChannelModel> scenarios = {
        ChannelModel(ChannelKind::Dephase1Q, OhmicParams{3.0, 1.0}),
        ChannelModel(ChannelKind::Damp1Q, LorentzParams{1.0, 0.2, 0.0}),
        ChannelModel(ChannelKind::Dephase2Q, TwoQubitDephasingParams{0.2, 0.4, 0.0, {1.0, 1.0}}),
        ChannelModel(ChannelKind::Damp2Q, LorentzParams{1.0, 0.6, 0.0}),
    };
    for (const auto& model : scenarios) {
        const auto rho0 = fiducial_state(model.kind);
        const BasisMode mode = BasisMode::fixed(default_fixed_angles(model.kind));
        const double a = n_ckd(model, rho0, grid_of(30.0, 4096), mode).nCkd;
        const double b = n_ckd(model, rho0, grid_of(30.0, 8192), mode).nCkd;
        CHECK(b > 0.0);
        CHECK(std::abs(a - b) / b < 0.01);
    }
}

TEST_CASE("initial-state search never beats the maximally coherent qubit") {
    const TimeGrid g{30.0, 512};
    for (const ChannelModel& model :
         {ChannelModel(ChannelKind::Dephase1Q, OhmicParams{3.0, 1.0}),
          ChannelModel(ChannelKind::Damp1Q, LorentzParams{5.0, 1.0, 0.0})}) {
        const BasisMode mode = BasisMode::fixed(default_fixed_angles(model.kind));
        const double fiducial = n_ckd(model, fiducial_state(model.kind), g, mode).nCkd;
        const double searched = n_ckd_max_initial(model, g, mode, 6).nCkd;
        CHECK(searched == doctest::Approx(fiducial).epsilon(1e-10));
    }
    CHECK_THROWS_AS(n_ckd_max_initial(ChannelModel(ChannelKind::Damp2Q, LorentzParams{1, 1, 0}),
                                      g, BasisMode::optimize()),
                    DimensionError);
}

TEST_CASE("sweep over the ohmicity") {
    const ChannelModel proto(ChannelKind::Dephase1Q, OhmicParams{1.0, 1.0});
    const auto rows = sweep(proto, "s", 0.5, 5.0, 10, grid_of(30.0, 1024),
                            BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q)));
    REQUIRE(rows.size() == 10);
    CHECK(rows.front().paramValue == doctest::Approx(0.5));
    CHECK(rows.back().paramValue == doctest::Approx(5.0));
    double peakS = 0.0, peakV = -1.0;
    for (const auto& row : rows) {
        REQUIRE(row.ok);
        if (row.paramValue <= 2.0)
            CHECK(row.nCkd <= 1e-8);
        else if (row.paramValue <= 4.0)
            CHECK(row.nCkd > 1e-5);
        if (row.nCkd > peakV) {
            peakV = row.nCkd;
            peakS = row.paramValue;
        }
    }
    // backflow peaks near s = 3 and falls off toward large ohmicity
    CHECK(peakS > 2.0);
    CHECK(peakS < 4.0);
    CHECK(rows.back().nCkd < 0.5 * peakV);
}

TEST_CASE("sweep over kappa/gamma0 for damping") {
    const ChannelModel proto(ChannelKind::Damp1Q, LorentzParams{1.0, 1.0, 0.0});
    const auto rows = sweep(proto, "kappa-over-gamma0", 0.25, 3.0, 12, grid_of(30.0, 2048),
                            BasisMode::fixed(default_fixed_angles(ChannelKind::Damp1Q)));
    for (const auto& row : rows) {
        REQUIRE(row.ok);
        if (row.paramValue < 2.0)
            CHECK(row.nCkd > 1e-4);
        else
            CHECK(row.nCkd <= 1e-8);
    }
}

TEST_CASE("sweep records per-row failures and continues") {
    const ChannelModel proto(ChannelKind::Dephase1Q, OhmicParams{1.0, 1.0});
    const auto rows = sweep(proto, "s", -0.5, 0.5, 3, grid_of(10.0, 64),
                            BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q)));
    REQUIRE(rows.size() == 3);
    CHECK(!rows[0].ok);   // s = -0.5
    CHECK(!rows[1].ok);   // s = 0
    CHECK(rows[2].ok);    // s = 0.5
    CHECK(!rows[0].error.empty());

    CHECK_THROWS_AS(sweep(proto, "bogus", 0.1, 1.0, 2, grid_of(10.0, 64),
                          BasisMode::fixed(default_fixed_angles(ChannelKind::Dephase1Q))),
                    ParamError);
}
