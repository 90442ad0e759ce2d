#include "stt/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace stt {

namespace {

struct Entry {
    const char* key;
    const char* value;
};

// schema order is the order of the resolved file
constexpr Entry kSchema[] = {
    {"run.domain", "rectangle"},
    {"run.x_extent", "1"},
    {"run.nx", "32"},
    {"run.nz", "32"},
    {"scenario.generator", "stratified"},
    {"scenario.value", "1"},
    {"scenario.base", "1"},
    {"scenario.gradient", "1"},
    {"scenario.amplitude", "0.1"},
    {"scenario.mode", "1"},
    {"scenario.cx", "0.5"},
    {"scenario.cz", "0.7"},
    {"scenario.radius", "0.15"},
    {"scenario.cells", "4"},
    {"stokes.tol", "1e-10"},
    {"stokes.max_iterations", "8"},
    {"stokes.flux", "0"},
    {"transport.T", "1"},
    {"transport.dt", "0.01"},
    {"transport.velocity", "stokes"},
    {"transport.phi", "1"},
    {"simulate.T", "1"},
    {"simulate.dt", "0.01"},
    {"simulate.substeps", "1"},
    {"simulate.snapshot_every", "0"},
    {"picard.T", "0"},
    {"picard.target", "0.45"},
    {"picard.n_time_nodes", "16"},
    {"picard.tol", "1e-8"},
    {"picard.max_picard", "10"},
    {"picard.substeps", "2"},
    {"stability.T", "1"},
    {"stability.dt", "0.05"},
    {"stability.eps", "0.01"},
    {"stability.pairs", "4"},
    {"norms.windows", "1"},
    {"ledger.nmax", "40"},
    {"ledger.C", "1"},
    {"ledger.F", "1"},
    {"ledger.families", "100"},
};

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Config::Config() {
    for (const Entry& e : kSchema) {
        order_.push_back(e.key);
        values_[e.key] = e.value;
    }
}

Config Config::parse(std::istream& is, const std::string& origin) {
    Config c;
    std::string line, section;
    int lineno = 0;
    auto fail = [&](const std::string& what) {
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            bool any = false;
            for (const Entry& e : kSchema) any = any || std::string(e.key).rfind(section + ".", 0) == 0;
            if (!any) fail("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        if (section.empty()) fail("key outside of any section");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!c.known(key)) fail("unknown key '" + key + "'");
        if (value.empty()) fail("empty value for '" + key + "'");
        c.values_[key] = value;
    }
    return c;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path.string());
    return parse(is, path.string());
}

bool Config::known(const std::string& key) const { return values_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
    if (!known(key)) throw ConfigError("unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& Config::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    return it->second;
}

double Config::number(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError("'" + key + "' is not a finite number: " + s);
    return v;
}

int Config::integer(const std::string& key) const {
    const std::string& s = text(key);
    int v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw ConfigError("'" + key + "' is not an integer: " + s);
    return v;
}

std::string Config::resolved_text() const {
    std::ostringstream os;
    std::string section;
    for (const std::string& key : order_) {
        const auto dot = key.find('.');
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) os << "\n";
            os << "[" << sec << "]\n";
            section = sec;
        }
        os << key.substr(dot + 1) << " = " << values_.at(key) << "\n";
    }
    return os.str();
}

GridSpec Config::grid() const {
    const std::string& kind = text("run.domain");
    DomainSpec d;
    try {
        if (kind == "rectangle")
            d = DomainSpec::rectangle(number("run.x_extent"));
        else if (kind == "strip")
            d = DomainSpec::strip(number("run.x_extent"));
        else
            throw ConfigError("run.domain must be 'rectangle' or 'strip', got '" + kind + "'");
        return make_grid(d, integer("run.nx"), integer("run.nz"));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid [run] grid: ") + e.what());
    }
}

ScenarioParams Config::scenario() const {
    ScenarioParams p;
    p.generator = text("scenario.generator");
    p.value = number("scenario.value");
    p.base = number("scenario.base");
    p.gradient = number("scenario.gradient");
    p.amplitude = number("scenario.amplitude");
    p.mode = integer("scenario.mode");
    p.cx = number("scenario.cx");
    p.cz = number("scenario.cz");
    p.radius = number("scenario.radius");
    p.cells = integer("scenario.cells");
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid [scenario]: ") + e.what());
    }
    return p;
}

StokesConfig Config::stokes() const {
    StokesConfig s;
    s.linear_solver_tolerance = number("stokes.tol");
    s.max_iterations = integer("stokes.max_iterations");
    s.flux_target = number("stokes.flux");
    try {
        s.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid [stokes]: ") + e.what());
    }
    if (s.max_iterations < 1) throw ConfigError("stokes.max_iterations must be >= 1");
    return s;
}

}  // namespace stt
