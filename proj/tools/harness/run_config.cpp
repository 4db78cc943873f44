#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "tricycle/errors.hpp"

namespace tricycle::harness {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    const std::string_view t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        throw UsageError("not a number: '" + std::string(text) + "'");
    return v;
}

std::vector<double> json_list(const nlohmann::json& j, const std::string& key) {
    if (j.is_string()) return parse_range(j.get<std::string>());
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array()) throw UsageError("config key '" + key + "' must be a list, number or range string");
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) throw UsageError("config key '" + key + "' holds a non-number");
        out.push_back(x.get<double>());
    }
    return out;
}

double json_number(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number()) throw UsageError("config key '" + key + "' must be a number");
    return j.get<double>();
}

int json_int(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number_integer()) throw UsageError("config key '" + key + "' must be an integer");
    return j.get<int>();
}

}  // namespace

std::vector<double> parse_range(std::string_view text) {
    const std::string_view t = trim(text);
    if (t.empty()) return {};

    if (t.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::string_view rest = t;
        while (true) {
            const auto pos = rest.find(':');
            parts.push_back(parse_number(rest.substr(0, pos)));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        if (parts.size() != 3) throw UsageError("range must be start:stop:step, got '" + std::string(t) + "'");
        const double a = parts[0], b = parts[1], step = parts[2];
        if (!(step > 0.0)) throw UsageError("range step must be positive");
        std::vector<double> out;
        // index-based to avoid accumulating rounding; stop is inclusive within 1e-9 steps
        const double count = std::floor((b - a) / step + 1e-9);
        for (long i = 0; i <= static_cast<long>(count); ++i) out.push_back(a + static_cast<double>(i) * step);
        return out;
    }

    std::vector<double> out;
    std::string_view rest = t;
    while (true) {
        const auto pos = rest.find(',');
        out.push_back(parse_number(rest.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        rest.remove_prefix(pos + 1);
    }
    return out;
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "jsonl") return OutputFormat::jsonl;
    throw UsageError("format must be csv or jsonl, got '" + std::string(text) + "'");
}

DriveMode parse_drive(std::string_view text) {
    if (text == "cosine") return DriveMode::cosine;
    if (text == "frozen") return DriveMode::frozen;
    throw UsageError("drive must be cosine or frozen, got '" + std::string(text) + "'");
}

RunConfig load_config(const std::string& path, RunConfig cfg) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config '" + path + "'");

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config root must be an object");

    for (const auto& [key, value] : doc.items()) {
        if (key == "T_c") cfg.Tc = json_number(value, key);
        else if (key == "T_p") cfg.Tp = json_number(value, key);
        else if (key == "T_h") cfg.Th = json_number(value, key);
        else if (key == "zeta_c") cfg.zeta_c = json_number(value, key);
        else if (key == "zeta_h") cfg.zeta_h = json_number(value, key);
        else if (key == "delta_c") cfg.delta_c = json_number(value, key);
        else if (key == "hbar") cfg.hbar = json_number(value, key);
        else if (key == "kB") cfg.kB = json_number(value, key);
        else if (key == "gamma0") cfg.gamma0 = json_number(value, key);
        else if (key == "drive") cfg.drive = parse_drive(value.get<std::string>());
        else if (key == "alpha") cfg.alphas = json_list(value, key);
        else if (key == "tau_c") cfg.tau_c = json_list(value, key);
        else if (key == "tau_p") cfg.tau_p = json_list(value, key);
        else if (key == "cop_target") cfg.cop_target = json_number(value, key);
        else if (key == "nodes") cfg.quadrature.nodes = json_int(value, key);
        else if (key == "refinements") cfg.quadrature.refinements = json_int(value, key);
        else if (key == "tau_ladder") cfg.tau_ladder = json_list(value, key);
        else if (key == "min_steps") cfg.min_steps = json_int(value, key);
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "format") cfg.format = parse_format(value.get<std::string>());
        else throw UsageError("unknown config key '" + key + "'");
    }
    return cfg;
}

CycleConfig base_cycle(const RunConfig& cfg, double alpha) {
    CycleSeeds s;
    s.Tc = cfg.Tc;
    s.Tp = cfg.Tp;
    s.Th = cfg.Th;
    s.zeta_c = cfg.zeta_c;
    s.zeta_h = cfg.zeta_h;
    s.delta_c = cfg.delta_c.value_or(cfg.kB * cfg.Tc);
    s.hbar = cfg.hbar;
    s.kB = cfg.kB;
    s.gamma0 = cfg.gamma0;
    s.alpha = alpha;
    s.tau_c = s.tau_h = s.tau_p = 1.0;
    s.drive = cfg.drive;

    CycleConfig c;
    try {
        c = make_cycle(s);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    const auto diagnostics = validate_cycle(c);
    if (!diagnostics.empty()) throw UsageError("invalid cycle: " + diagnostics.front().message);
    return c;
}

void require_valid(const RunConfig& cfg) {
    const auto positive = [](const std::vector<double>& v, const char* name) {
        if (v.empty()) throw UsageError(std::string(name) + " grid is empty");
        for (double x : v)
            if (!(x > 0.0)) throw UsageError(std::string(name) + " values must be positive");
    };
    positive(cfg.tau_c, "tau_c");
    positive(cfg.tau_p, "tau_p");
    if (cfg.alphas.empty()) throw UsageError("alpha list is empty");
    for (double a : cfg.alphas)
        if (!(a >= 0.0)) throw UsageError("alpha values must be non-negative");
    if (cfg.quadrature.nodes < 3 || cfg.quadrature.nodes % 2 == 0) throw UsageError("nodes must be odd and >= 3");
    if (cfg.quadrature.refinements < 0) throw UsageError("refinements must be >= 0");
}

unsigned worker_count() {
    if (const char* env = std::getenv("TRICYCLE_THREADS")) {
        const std::string_view t = trim(env);
        unsigned n = 0;
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
        if (ec != std::errc() || ptr != t.data() + t.size() || n == 0)
            throw UsageError("TRICYCLE_THREADS must be a positive integer");
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace tricycle::harness
