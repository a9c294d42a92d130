#include "qtrap/config.hpp"

#include "qtrap/csv.hpp"
#include "qtrap/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace qtrap {

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
          std::string msg = std::to_string(issues.size()) + " configuration error(s)";
          for (const auto& i : issues) msg += "\n  " + i;
          return msg;
      }()),
      issues_(std::move(issues)) {}

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 6> kCommands{{
    {Command::Simulate, "simulate"},
    {Command::BoundState, "bound-state"},
    {Command::Distribution, "distribution"},
    {Command::AlphaScan, "alpha-scan"},
    {Command::PhaseDiagram, "phase-diagram"},
    {Command::IdentityCheck, "identity-check"},
}};

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::string unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

struct Entry {
    std::string value;
    int line;
};

class Parser {
public:
    Parser(std::string_view text, std::string base_dir) : base_dir_(std::move(base_dir)) {
        read(text);
    }

    RunConfig build();

private:
    using Section = std::map<std::string, Entry, std::less<>>;

    void read(std::string_view text);
    void error(int line, const std::string& msg) {
        issues_.push_back(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
    }

    const Entry* find(std::string_view section, std::string_view key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto e = s->second.find(key);
        return e == s->second.end() ? nullptr : &e->second;
    }

    std::optional<double> number(std::string_view section, std::string_view key) {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        double v = 0.0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last || !std::isfinite(v)) {
            error(e->line, "'" + std::string(key) + "' is not a decimal number: '" + e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<std::uint64_t> integer(std::string_view section, std::string_view key) {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        std::uint64_t v = 0;
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc{} || res.ptr != last) {
            error(e->line, "'" + std::string(key) + "' is not a non-negative integer: '" + e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<bool> boolean(std::string_view section, std::string_view key) {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        if (e->value == "true") return true;
        if (e->value == "false") return false;
        error(e->line, "'" + std::string(key) + "' must be true or false");
        return std::nullopt;
    }

    void positive(std::string_view section, std::string_view key, const std::optional<double>& v) {
        if (v && !(*v > 0.0)) error(find(section, key)->line, "'" + std::string(key) + "' must be > 0");
    }

    std::optional<Axis> axis(char prefix);

    std::string base_dir_;
    std::map<std::string, Section, std::less<>> sections_;
    std::vector<std::string> issues_;
};

const std::map<std::string, std::vector<std::string>, std::less<>>& allowed_keys() {
    static const std::map<std::string, std::vector<std::string>, std::less<>> keys{
        {"", {"command"}},
        {"model", {"model", "eta", "omega_c", "lambda_cut", "gamma", "lam", "g", "omega_prime", "k_max"}},
        {"system", {"omega_0", "unit"}},
        {"grid", {"t_max", "dt"}},
        {"init", {"alpha", "matrix"}},
        {"scan",
         {"alpha_min", "alpha_max", "alpha_count", "x_parameter", "x_min", "x_max", "x_count", "x_log",
          "y_parameter", "y_min", "y_max", "y_count", "y_log"}},
        {"output", {"path", "seed", "stride", "samples"}},
    };
    return keys;
}

void Parser::read(std::string_view text) {
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                error(line_no, "malformed section header");
                continue;
            }
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (!allowed_keys().contains(current)) error(line_no, "unknown section [" + current + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            error(line_no, "expected key = value");
            continue;
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        const auto allowed = allowed_keys().find(current);
        if (allowed == allowed_keys().end()) continue;  // already reported
        const auto& names = allowed->second;
        if (std::find(names.begin(), names.end(), key) == names.end()) {
            error(line_no, "unknown key '" + key + "'" +
                               (current.empty() ? std::string{} : " in [" + current + "]"));
            continue;
        }
        auto& section = sections_[current];
        if (section.contains(key)) {
            error(line_no, "duplicate key '" + key + "'");
            continue;
        }
        section.emplace(key, Entry{value, line_no});
    }
}

std::optional<Axis> Parser::axis(char prefix) {
    const std::string p(1, prefix);
    const Entry* name = find("scan", p + "_parameter");
    const auto lo = number("scan", p + "_min");
    const auto hi = number("scan", p + "_max");
    const auto n = integer("scan", p + "_count");
    const auto lg = boolean("scan", p + "_log");
    if (!name) {
        error(0, "missing required key '" + p + "_parameter' in [scan]");
        return std::nullopt;
    }
    if (!lo || !hi || !n) {
        for (const char* k : {"_min", "_max", "_count"})
            if (!find("scan", p + k)) error(0, "missing required key '" + p + k + "' in [scan]");
        return std::nullopt;
    }
    Axis a{name->value, *lo, *hi, static_cast<std::size_t>(*n), lg.value_or(false)};
    try {
        a.validate();
    } catch (const DomainError& e) {
        error(name->line, e.what());
        return std::nullopt;
    }
    return a;
}

RunConfig Parser::build() {
    RunConfig c;

    if (const Entry* e = find("", "command")) {
        if (const auto cmd = command_from_name(e->value))
            c.command = *cmd;
        else
            error(e->line, "unknown command '" + e->value + "'");
    } else {
        error(0, "missing required key 'command'");
    }

    bool model_ok = false;
    if (const Entry* e = find("model", "model")) {
        try {
            c.model = make_model(e->value);
            model_ok = true;
        } catch (const DomainError& ex) {
            error(e->line, ex.what());
        }
    } else {
        error(0, "missing required key 'model' in [model]");
    }
    if (model_ok) {
        if (auto s = sections_.find("model"); s != sections_.end()) {
            for (const auto& [key, entry] : s->second) {
                if (key == "model") continue;
                const auto v = number("model", key);
                if (!v) continue;
                try {
                    c.model = with_parameter(c.model, key, *v);
                } catch (const DomainError& ex) {
                    error(entry.line, ex.what());
                }
            }
        }
        try {
            validate(c.model);
        } catch (const DomainError& ex) {
            error(0, std::string("[model] ") + ex.what());
            model_ok = false;
        }
    }

    if (const auto w = number("system", "omega_0")) {
        c.omega_0 = *w;
        positive("system", "omega_0", w);
    }
    const bool pbg = std::holds_alternative<PbgBandEdge>(c.model);
    c.unit = pbg ? "omega_c" : "omega_0";
    if (const Entry* e = find("system", "unit")) {
        if (e->value != "omega_0" && e->value != "omega_c")
            error(e->line, "unit must be omega_0 or omega_c");
        else
            c.unit = e->value;
    }
    if (model_ok) {
        if (c.unit == "omega_0" && c.omega_0 != 1.0)
            error(find("system", "omega_0") ? find("system", "omega_0")->line : 0,
                  "omega_0 must be 1 when frequencies are in units of omega_0");
        if (c.unit == "omega_c") {
            std::optional<double> wc;
            for (const auto& [k, v] : parameters(c.model))
                if (k == "omega_c") wc = v;
            if (!wc)
                error(find("system", "unit")->line, "unit omega_c needs a model with an omega_c parameter");
            else if (*wc != 1.0)
                error(0, "omega_c must be 1 when frequencies are in units of omega_c");
        }
    }
    if (model_ok) c.model = anchored(c.model, c.omega_0);

    const double ref = model_ok ? reference_frequency(c.model, c.omega_0) : 1.0;
    c.t_max = 50.0 / ref;
    c.dt = 1e-3 / ref;
    if (const auto v = number("grid", "t_max")) {
        positive("grid", "t_max", v);
        c.t_max = *v;
    }
    if (const auto v = number("grid", "dt")) {
        positive("grid", "dt", v);
        c.dt = *v;
    }

    if (const auto a = number("init", "alpha")) {
        if (!(*a > 0.0 && *a < 1.0)) error(find("init", "alpha")->line, "alpha must lie in (0, 1)");
        c.alpha = *a;
    }
    if (const Entry* e = find("init", "matrix")) {
        namespace fs = std::filesystem;
        fs::path p(e->value);
        if (p.is_relative()) p = fs::absolute(fs::path(base_dir_) / p).lexically_normal();
        if (!fs::exists(p)) error(e->line, "matrix file '" + p.string() + "' does not exist");
        c.matrix_path = p.string();
    }

    if (const auto v = number("scan", "alpha_min")) c.alphas.min = *v;
    if (const auto v = number("scan", "alpha_max")) c.alphas.max = *v;
    if (const auto v = integer("scan", "alpha_count")) c.alphas.count = static_cast<std::size_t>(*v);
    if (!(c.alphas.min > 0.0 && c.alphas.max < 1.0 && c.alphas.min <= c.alphas.max && c.alphas.count >= 1 &&
          (c.alphas.count == 1 || c.alphas.min < c.alphas.max)))
        error(0, "[scan] alpha range must satisfy 0 < alpha_min < alpha_max < 1 with alpha_count >= 1");

    const bool has_axes = find("scan", "x_parameter") || find("scan", "y_parameter");
    if (c.command == Command::PhaseDiagram || has_axes) {
        auto x = axis('x');
        auto y = axis('y');
        if (x && y) {
            if (x->parameter == y->parameter) error(0, "[scan] x and y must sweep different parameters");
            if (model_ok) {
                for (const Axis* a : {&*x, &*y}) {
                    try {
                        (void)with_parameter(c.model, a->parameter, a->min);
                    } catch (const DomainError& ex) {
                        error(find("scan", std::string(1, a == &*x ? 'x' : 'y') + "_parameter")->line, ex.what());
                    }
                }
            }
            c.scan = ScanConfig{*x, *y, c.alpha.value_or(0.7)};
        }
    }

    const bool needs_alpha = c.command == Command::Distribution || c.command == Command::PhaseDiagram ||
                             (c.command == Command::Simulate && !c.matrix_path);
    if (needs_alpha && !c.alpha)
        error(0, std::string("missing required key 'alpha' in [init] for ") +
                     std::string(command_name(c.command)));

    if (const Entry* e = find("output", "path")) c.output = e->value;
    if (const auto v = integer("output", "seed")) c.seed = *v;
    if (const auto v = integer("output", "stride")) {
        if (*v == 0) error(find("output", "stride")->line, "'stride' must be >= 1");
        c.stride = static_cast<std::size_t>(*v);
    }
    if (const auto v = integer("output", "samples")) c.samples = static_cast<std::size_t>(*v);

    if (!issues_.empty()) throw ConfigError(issues_);
    return c;
}

} // namespace

std::string_view command_name(Command c) {
    for (const auto& [k, n] : kCommands)
        if (k == c) return n;
    return "unknown";
}

std::optional<Command> command_from_name(std::string_view name) {
    for (const auto& [k, n] : kCommands)
        if (n == name) return k;
    return std::nullopt;
}

RunConfig parse_config(std::string_view text, const std::string& base_dir) {
    return Parser(text, base_dir).build();
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({"cannot read config file '" + path + "'"});
    std::ostringstream ss;
    ss << in.rdbuf();
    const auto dir = std::filesystem::path(path).parent_path();
    return parse_config(ss.str(), dir.empty() ? "." : dir.string());
}

std::string emit(const RunConfig& c) {
    using csv::format;
    std::ostringstream os;
    os << "command = " << command_name(c.command) << "\n\n[model]\n";
    os << "model = " << kind_name(c.model) << "\n";
    for (const auto& [k, v] : parameters(c.model)) os << k << " = " << format(v) << "\n";
    os << "\n[system]\nomega_0 = " << format(c.omega_0) << "\nunit = " << c.unit << "\n";
    os << "\n[grid]\nt_max = " << format(c.t_max) << "\ndt = " << format(c.dt) << "\n";
    if (c.alpha || c.matrix_path) {
        os << "\n[init]\n";
        if (c.alpha) os << "alpha = " << format(*c.alpha) << "\n";
        if (c.matrix_path) os << "matrix = " << *c.matrix_path << "\n";
    }
    os << "\n[scan]\nalpha_min = " << format(c.alphas.min) << "\nalpha_max = " << format(c.alphas.max)
       << "\nalpha_count = " << c.alphas.count << "\n";
    if (c.scan) {
        for (const auto& [p, a] : {std::pair{'x', &c.scan->x}, std::pair{'y', &c.scan->y}}) {
            os << p << "_parameter = " << a->parameter << "\n"
               << p << "_min = " << format(a->min) << "\n"
               << p << "_max = " << format(a->max) << "\n"
               << p << "_count = " << a->count << "\n"
               << p << "_log = " << (a->log_scale ? "true" : "false") << "\n";
        }
    }
    os << "\n[output]\npath = " << c.output << "\nseed = " << c.seed << "\nstride = " << c.stride
       << "\nsamples = " << c.samples << "\n";
    return os.str();
}

} // namespace qtrap
