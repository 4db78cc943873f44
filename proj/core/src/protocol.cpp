#include "tricycle/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tricycle/errors.hpp"

namespace tricycle {

std::string_view to_string(ReservoirLabel label) {
    switch (label) {
        case ReservoirLabel::c: return "c";
        case ReservoirLabel::h: return "h";
        case ReservoirLabel::p: return "p";
    }
    return "?";
}

Reservoir Reservoir::make(ReservoirLabel label, double temperature, double kB) {
    if (!(temperature > 0.0) || !(kB > 0.0)) throw DomainError("Reservoir: temperature and kB must be positive");
    return {label, temperature, 1.0 / (kB * temperature)};
}

ClosedParameters close_parameters(double Tc, double Th, double Tp,
                                  double zeta_c, double zeta_h, double delta_c) {
    if (!(Tc > 0.0 && Tp > Tc && Th > Tp)) throw DomainError("close_parameters: need Th > Tp > Tc > 0");
    if (!(zeta_c > 1.0 && zeta_h > 1.0)) throw DomainError("close_parameters: need zeta_c, zeta_h > 1");
    if (!(delta_c > 0.0)) throw DomainError("close_parameters: need delta_c > 0");

    ClosedParameters out{};
    out.zeta_p = (1.0 + zeta_c * zeta_h) / (zeta_c + zeta_h);
    out.delta_h = Th * (zeta_c - 1.0) / (Tc * (1.0 + zeta_h)) * delta_c;
    out.delta_p = Tp * (zeta_c + zeta_h) / (Tc * (1.0 + zeta_h)) * delta_c;
    if (!(out.zeta_p > 1.0)) throw DomainError("close_parameters: zeta_p <= 1, omega_p would reach zero");
    return out;
}

CycleSeeds caption_defaults() {
    CycleSeeds s;
    s.delta_c = s.kB * s.Tc;
    return s;
}

CycleConfig make_cycle(const CycleSeeds& seeds) {
    const ClosedParameters cp = close_parameters(seeds.Tc, seeds.Th, seeds.Tp, seeds.zeta_c,
                                                 seeds.zeta_h, seeds.delta_c);
    CycleConfig c;
    c.hbar = seeds.hbar;
    c.kB = seeds.kB;

    auto branch = [&](ReservoirLabel label, double T, double delta, double zeta, double tau,
                      Orientation orientation) {
        BranchProtocol b;
        b.reservoir = Reservoir::make(label, T, seeds.kB);
        b.delta = delta;
        b.zeta = zeta;
        b.tau = tau;
        b.orientation = orientation;
        b.alpha = seeds.alpha;
        b.gamma0 = seeds.gamma0;
        b.hbar = seeds.hbar;
        b.drive = seeds.drive;
        return b;
    };
    c.branches[kCold] = branch(ReservoirLabel::c, seeds.Tc, seeds.delta_c, seeds.zeta_c, seeds.tau_c,
                               Orientation::forward);
    c.branches[kHot] = branch(ReservoirLabel::h, seeds.Th, cp.delta_h, seeds.zeta_h, seeds.tau_h,
                              Orientation::forward);
    c.branches[kAux] = branch(ReservoirLabel::p, seeds.Tp, cp.delta_p, cp.zeta_p, seeds.tau_p,
                              Orientation::reversed);
    return c;
}

CycleConfig with_durations(CycleConfig c, double tau_c, double tau_h, double tau_p) {
    c.branches[kCold].tau = tau_c;
    c.branches[kHot].tau = tau_h;
    c.branches[kAux].tau = tau_p;
    return c;
}

CycleConfig with_alpha(CycleConfig c, double alpha) {
    for (auto& b : c.branches) b.alpha = alpha;
    return c;
}

namespace detail {

double omega_unchecked(const BranchProtocol& b, double s) {
    if (b.drive == DriveMode::frozen) return b.delta * b.zeta;
    const double phase = b.orientation == Orientation::forward ? s : 1.0 - s;
    return b.delta * (std::cos(std::numbers::pi * phase) + b.zeta);
}

double domega_ds_unchecked(const BranchProtocol& b, double s) {
    if (b.drive == DriveMode::frozen) return 0.0;
    constexpr double pi = std::numbers::pi;
    if (b.orientation == Orientation::forward) return -pi * b.delta * std::sin(pi * s);
    // d/ds cos(pi (1 - s)) = pi sin(pi (1 - s))
    return pi * b.delta * std::sin(pi * (1.0 - s));
}

}  // namespace detail

namespace {

void check_unit_interval(double s, const char* who) {
    if (!(s >= 0.0 && s <= 1.0)) {
        std::ostringstream os;
        os << who << ": s = " << s << " outside [0,1]";
        throw DomainError(os.str());
    }
}

}  // namespace

double omega(const BranchProtocol& b, double s) {
    check_unit_interval(s, "omega");
    return detail::omega_unchecked(b, s);
}

double domega_ds(const BranchProtocol& b, double s) {
    check_unit_interval(s, "domega_ds");
    return detail::domega_ds_unchecked(b, s);
}

std::vector<Diagnostic> validate_cycle(const CycleConfig& c) {
    std::vector<Diagnostic> out;
    auto report = [&](std::string check, double magnitude, std::string message) {
        out.push_back({std::move(check), magnitude, std::move(message)});
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };

    if (!(c.hbar > 0.0)) report("positivity", c.hbar, "hbar must be positive");
    if (!(c.kB > 0.0)) report("positivity", c.kB, "kB must be positive");

    constexpr std::array<ReservoirLabel, 3> labels{ReservoirLabel::c, ReservoirLabel::h, ReservoirLabel::p};
    for (std::size_t i = 0; i < 3; ++i) {
        const BranchProtocol& b = c.branches[i];
        const std::string tag(to_string(labels[i]));
        if (b.reservoir.label != labels[i]) report("label", 1.0, "branch " + tag + " carries the wrong reservoir label");
        if (!(b.reservoir.temperature > 0.0)) report("positivity", b.reservoir.temperature, "T_" + tag + " must be positive");
        else if (c.kB > 0.0) {
            const double err = std::abs(b.reservoir.beta * b.reservoir.temperature * c.kB - 1.0);
            if (err > 1e-14) report("beta", err, "beta_" + tag + " * T_" + tag + " * kB != 1");
        }
        if (!(b.delta > 0.0)) report("positivity", b.delta, "delta_" + tag + " must be positive");
        if (!(b.tau > 0.0)) report("positivity", b.tau, "tau_" + tag + " must be positive");
        if (!(b.gamma0 > 0.0)) report("positivity", b.gamma0, "gamma0 must be positive");
        if (!(b.alpha >= 0.0)) report("alpha", b.alpha, "alpha must be non-negative");
        if (b.drive == DriveMode::cosine && !(b.zeta > 1.0))
            report("zeta", 1.0 - b.zeta, "zeta_" + tag + " must exceed 1");
        if (std::abs(b.hbar - c.hbar) > 0.0) report("hbar", std::abs(b.hbar - c.hbar), "branch hbar differs from cycle hbar");
        const Orientation expected = labels[i] == ReservoirLabel::p ? Orientation::reversed : Orientation::forward;
        if (b.orientation != expected) report("orientation", 1.0, "branch " + tag + " has the wrong orientation");
    }

    const double Tc = c.cold().reservoir.temperature;
    const double Th = c.hot().reservoir.temperature;
    const double Tp = c.aux().reservoir.temperature;
    if (!(Th > Tp && Tp > Tc && Tc > 0.0)) {
        report("ordering", std::max(Tp - Th, Tc - Tp), "temperatures must satisfy Th > Tp > Tc > 0");
    }

    const BranchProtocol& bc = c.cold();
    const BranchProtocol& bh = c.hot();
    const BranchProtocol& bp = c.aux();
    const bool cosine = bc.drive == DriveMode::cosine && bh.drive == DriveMode::cosine &&
                        bp.drive == DriveMode::cosine;
    if (cosine && Tc > 0.0 && Th > 0.0 && Tp > 0.0) {
        const double r1 = bc.delta * (bc.zeta - 1.0) / (bh.delta * (bh.zeta + 1.0));
        const double r2 = bh.delta * (bh.zeta - 1.0) / (bp.delta * (bp.zeta - 1.0));
        const double r3 = bp.delta * (bp.zeta + 1.0) / (bc.delta * (bc.zeta + 1.0));
        if (const double e = rel(r1, Tc / Th); e > 1e-10) report("closure_c_h", e, "delta_c(zeta_c-1)/[delta_h(zeta_h+1)] != Tc/Th");
        if (const double e = rel(r2, Th / Tp); e > 1e-10) report("closure_h_p", e, "delta_h(zeta_h-1)/[delta_p(zeta_p-1)] != Th/Tp");
        if (const double e = rel(r3, Tp / Tc); e > 1e-10) report("closure_p_c", e, "delta_p(zeta_p+1)/[delta_c(zeta_c+1)] != Tp/Tc");
    }
    return out;
}

}  // namespace tricycle
