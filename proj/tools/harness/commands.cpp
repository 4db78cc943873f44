#include "commands.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "table.hpp"
#include "tricycle/dynamics_oracle.hpp"
#include "tricycle/errors.hpp"
#include "tricycle/thermo_geometry.hpp"
#include "tricycle/time_optimizer.hpp"

namespace tricycle::harness {

namespace {

const std::vector<std::string> kGridColumns{
    "tau_c", "tau_p", "tau_h", "alpha", "eps",     "eps_r",   "R",       "dS_en",  "Lbar2", "lh",
    "rh",    "lh_minus_rh", "L_c", "L_h", "L_p", "Sigma_c", "Sigma_h", "Sigma_p", "status"};

struct AlphaData {
    CycleConfig cycle;
    std::array<BranchFunctionals, 3> functionals;
};

std::vector<AlphaData> prepare_alphas(const RunConfig& cfg, unsigned workers) {
    std::vector<AlphaData> out(cfg.alphas.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i].cycle = base_cycle(cfg, cfg.alphas[i]);
    parallel_for(out.size(), workers,
                 [&](std::size_t i) { out[i].functionals = cycle_functionals(out[i].cycle, cfg.quadrature); });
    return out;
}

BranchTriple triple(const std::array<BranchFunctionals, 3>& f, double BranchFunctionals::*field) {
    return {f[0].*field, f[1].*field, f[2].*field};
}

struct GridRow {
    Row cells;
    std::string status;
    std::string choice;
};

GridRow grid_row(const AlphaData& a, double alpha, double tau_c, double tau_p) {
    const auto& f = a.functionals;
    GridRow g;
    g.cells = {tau_c, tau_p, {}, alpha, {}, {}, {}, {}, {}, {}, {}, {},
               f[kCold].length, f[kHot].length, f[kAux].length,
               f[kCold].sigma, f[kHot].sigma, f[kAux].sigma, {}};
    const CycleConfig& c = a.cycle;
    g.cells[5] = reversible_cop(c.cold().reservoir.temperature, c.aux().reservoir.temperature,
                                c.hot().reservoir.temperature);

    RootSolution root;
    try {
        root = solve_tau_h(triple(f, &BranchFunctionals::dS_eq), triple(f, &BranchFunctionals::sigma), tau_c, tau_p);
    } catch (const InfeasibleError&) {
        g.status = "INFEASIBLE";
        g.cells.back() = g.status;
        return g;
    }

    const CycleMetrics m = cycle_metrics(with_durations(c, tau_c, root.tau, tau_p), f);
    const double gap = m.lh - m.rh;
    g.cells[2] = root.tau;
    g.cells[4] = m.eps;
    g.cells[6] = m.R;
    g.cells[7] = m.dS_en;
    g.cells[8] = m.Lbar2;
    g.cells[9] = m.lh;
    g.cells[10] = m.rh;
    g.cells[11] = gap;
    g.status = gap < -kBoundTolerance ? "VIOLATION" : "OK";
    g.cells.back() = g.status;
    g.choice = std::string(to_string(root.choice));
    return g;
}

std::vector<GridRow> evaluate_grid(const RunConfig& cfg) {
    require_valid(cfg);
    const unsigned workers = worker_count();
    const std::vector<AlphaData> alphas = prepare_alphas(cfg, workers);

    const std::size_t nc = cfg.tau_c.size(), np = cfg.tau_p.size();
    std::vector<GridRow> rows(alphas.size() * nc * np);
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        const std::size_t ia = i / (nc * np), ic = (i / np) % nc, ip = i % np;
        rows[i] = grid_row(alphas[ia], cfg.alphas[ia], cfg.tau_c[ic], cfg.tau_p[ip]);
    });
    return rows;
}

}  // namespace

int cmd_verify_bound(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    const std::vector<GridRow> rows = evaluate_grid(cfg);
    std::vector<std::string> columns = kGridColumns;
    columns.push_back("root_choice");
    TableWriter table(out, cfg.format, "verify-bound", columns);

    int violations = 0, infeasible = 0;
    for (const GridRow& g : rows) {
        Row r = g.cells;
        r.push_back(g.choice.empty() ? Cell{} : Cell{g.choice});
        table.write(r);
        violations += g.status == "VIOLATION";
        infeasible += g.status == "INFEASIBLE";
    }
    log << "verify-bound: " << rows.size() << " points, " << infeasible << " infeasible, " << violations
        << " violating lh - rh >= " << -kBoundTolerance << '\n';
    return violations ? kViolation : kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const std::vector<GridRow> rows = evaluate_grid(cfg);
    TableWriter table(out, cfg.format, "sweep", kGridColumns);
    for (const GridRow& g : rows) table.write(g.cells);
    return kOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (cfg.tau_ladder.size() < 3) throw UsageError("tau ladder needs at least 3 entries");
    for (std::size_t i = 0; i < cfg.tau_ladder.size(); ++i) {
        if (!(cfg.tau_ladder[i] > 0.0) || (i && !(cfg.tau_ladder[i] > cfg.tau_ladder[i - 1])))
            throw UsageError("tau ladder must be positive and strictly increasing");
    }
    if (cfg.alphas.empty()) throw UsageError("alpha list is empty");
    if (cfg.min_steps < 1000) throw UsageError("min_steps must be >= 1000");
    if (cfg.quadrature.nodes < 3 || cfg.quadrature.nodes % 2 == 0) throw UsageError("nodes must be odd and >= 3");

    std::vector<CycleConfig> cycles;
    for (double alpha : cfg.alphas) cycles.push_back(base_cycle(cfg, alpha));

    std::vector<OrderCheckReport> reports(cycles.size());
    try {
        parallel_for(cycles.size(), worker_count(), [&](std::size_t i) {
            reports[i] = perturbation_order_check(cycles[i], cfg.tau_ladder, cfg.quadrature, cfg.min_steps);
        });
    } catch (const IntegratorError& e) {
        log << "oracle-check: integrator failure: " << e.what() << '\n';
        return kNumerical;
    }

    TableWriter table(out, cfg.format, "oracle-check",
                      {"alpha", "tau", "steps", "state_error", "heat_error", "state_slope", "heat_slope", "verdict"});
    bool all_pass = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const OrderCheckReport& r = reports[i];
        const std::string verdict = r.exact ? "EXACT" : (r.pass ? "PASS" : "FAIL");
        all_pass = all_pass && r.pass;
        const Cell ss = r.exact ? Cell{} : Cell{r.state_slope};
        const Cell hs = r.exact ? Cell{} : Cell{r.heat_slope};
        for (const OrderCheckRow& row : r.rows)
            table.write({cfg.alphas[i], row.tau, static_cast<double>(row.steps), row.state_error, row.heat_error, ss, hs,
                         verdict});
        log << "oracle-check alpha=" << cfg.alphas[i] << ": ";
        if (r.exact) log << "errors at rounding level, slopes undefined, PASS\n";
        else log << "slopes E " << r.state_slope << ", D " << r.heat_slope << " in [" << kSlopeLow << ", "
                 << kSlopeHigh << "]: " << verdict << '\n';
    }
    return all_pass ? kOk : kViolation;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (!cfg.cop_target) throw UsageError("optimize needs --cop-target");
    RunConfig checked = cfg;
    checked.tau_p = {1.0};  // tau_p is an output here
    require_valid(checked);

    const unsigned workers = worker_count();
    const std::vector<AlphaData> alphas = prepare_alphas(cfg, workers);
    const double target = *cfg.cop_target;
    const std::size_t nc = cfg.tau_c.size();

    std::vector<Row> rows(alphas.size() * nc);
    std::vector<int> bad(rows.size(), 0);
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        const AlphaData& a = alphas[i / nc];
        const double alpha = cfg.alphas[i / nc];
        const double tau_c = cfg.tau_c[i % nc];
        try {
            const AllocationResult r = solve_fixed_cop(a.cycle, a.functionals, tau_c, target);
            const CycleMetrics m = cycle_metrics(with_durations(a.cycle, r.tau_c, r.tau_h, r.tau_p), a.functionals);
            const double tau = r.tau_c + r.tau_h + r.tau_p;
            const bool ok = std::abs(r.residual) < 1e-9 * 2.0 * tau && std::abs(m.eps - target) < 1e-8;
            bad[i] = !ok;
            rows[i] = {r.tau_c, r.tau_h, r.tau_p, m.eps, r.residual, alpha, std::string(ok ? "OK" : "CHECK_FAIL"),
                       std::string(to_string(r.choice))};
        } catch (const InfeasibleError&) {
            rows[i] = {tau_c, {}, {}, {}, {}, alpha, std::string("INFEASIBLE"), {}};
        }
    });

    TableWriter table(out, cfg.format, "optimize",
                      {"tau_c", "tau_h", "tau_p", "eps_check", "residual", "alpha", "status", "root_choice"});
    int failures = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.write(rows[i]);
        failures += bad[i];
    }
    if (failures) log << "optimize: " << failures << " rows failed the COP or constraint check\n";
    return failures ? kViolation : kOk;
}

}  // namespace tricycle::harness
