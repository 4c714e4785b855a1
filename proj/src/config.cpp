#include "tcw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tcw/octant.hpp"

namespace tcw {

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::flt: return "flt";
        case ExperimentKind::kr: return "kr";
        case ExperimentKind::divergence: return "divergence";
        case ExperimentKind::tau_moment: return "tau_moment";
        case ExperimentKind::escape_rate: return "escape_rate";
        case ExperimentKind::sde_crosscheck: return "sde_crosscheck";
        case ExperimentKind::cauchy_mc: return "cauchy_mc";
    }
    return "?";
}

std::optional<ExperimentKind> experiment_kind_from(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::flt, ExperimentKind::kr, ExperimentKind::divergence,
          ExperimentKind::tau_moment, ExperimentKind::escape_rate,
          ExperimentKind::sde_crosscheck, ExperimentKind::cauchy_mc})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

namespace {

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& file, int line, const std::string& msg) {
    std::ostringstream os;
    os << file << ":" << line << ": " << msg;
    throw config_error(os.str());
}

class Parsed {
  public:
    Parsed(const std::string& text, std::string file) : file_(std::move(file)) {
        std::istringstream in(text);
        std::string line;
        std::string section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = trim(line.substr(0, line.find('#')));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(file_, lineno, "unterminated section header");
                section = trim(s.substr(1, s.size() - 2));
                if (section.empty()) fail(file_, lineno, "empty section name");
                sections_.try_emplace(section);
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                fail(file_, lineno, "expected 'key = value'");
            if (section.empty())
                fail(file_, lineno, "key outside of any [section]");
            const std::string key = trim(s.substr(0, eq));
            if (key.empty()) fail(file_, lineno, "empty key");
            auto [it, inserted] =
                sections_[section].insert({key, Entry{trim(s.substr(eq + 1)), lineno}});
            if (!inserted)
                fail(file_, lineno, "duplicate key '" + key + "' in [" + section + "]");
        }
    }

    [[nodiscard]] const Entry* find(const std::string& section, const std::string& key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto k = s->second.find(key);
        if (k == s->second.end()) return nullptr;
        k->second.used = true;
        return &k->second;
    }

    [[nodiscard]] const Entry& require(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            fail(file_, 1, "missing required field '" + key + "' in section [" + section + "]");
        return *e;
    }

    double number(const std::string& section, const std::string& key) const {
        return to_number(require(section, key), key);
    }

    double number_or(const std::string& section, const std::string& key, double def) const {
        const Entry* e = find(section, key);
        return e ? to_number(*e, key) : def;
    }

    std::string string_or(const std::string& section, const std::string& key,
                          const std::string& def) const {
        const Entry* e = find(section, key);
        return e ? e->value : def;
    }

    std::vector<double> list(const std::string& section, const std::string& key) const {
        return to_list(require(section, key), key);
    }

    std::vector<double> list_or(const std::string& section, const std::string& key,
                                std::vector<double> def) const {
        const Entry* e = find(section, key);
        return e ? to_list(*e, key) : def;
    }

    void check_all_used() const {
        for (const auto& [sec, entries] : sections_)
            for (const auto& [key, e] : entries)
                if (!e.used)
                    fail(file_, e.line, "unknown field '" + key + "' in section [" + sec + "]");
    }

    double to_number(const Entry& e, const std::string& key) const {
        try {
            std::size_t pos = 0;
            const double v = std::stod(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(file_, e.line, "field '" + key + "': expected a number, got '" + e.value + "'");
        }
    }

    std::vector<double> to_list(const Entry& e, const std::string& key) const {
        std::vector<double> out;
        std::istringstream in(e.value);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(file_, e.line, "field '" + key + "': empty list element");
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(file_, e.line, "field '" + key + "': expected number, got '" + item + "'");
            }
        }
        if (out.empty()) fail(file_, e.line, "field '" + key + "': empty list");
        return out;
    }

    [[nodiscard]] const std::string& file() const { return file_; }
    [[nodiscard]] int line_of(const std::string& section, const std::string& key) const {
        const Entry* e = find(section, key);
        return e ? e->line : 1;
    }

  private:
    std::string file_;
    std::map<std::string, Section> sections_;
};

std::size_t positive_count(const Parsed& p, const std::string& sec, const std::string& key,
                           double def) {
    const double v = p.number_or(sec, key, def);
    if (!(v >= 1.0) || v != std::floor(v))
        fail(p.file(), p.line_of(sec, key), "field '" + key + "': expected a positive integer");
    return static_cast<std::size_t>(v);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& filename) {
    Parsed p(text, filename);
    ExperimentConfig cfg;

    const std::string kind_name = p.require("experiment", "kind").value;
    const auto kind = experiment_kind_from(kind_name);
    if (!kind)
        fail(filename, p.line_of("experiment", "kind"),
             "unknown experiment kind '" + kind_name + "'");
    cfg.kind = *kind;

    // [model]
    (void)p.require("model", "dimension");
    cfg.model.dimension = positive_count(p, "model", "dimension", 0.0);
    cfg.model.octant_limits = p.list("model", "octant_limits");
    const std::string profile = p.string_or("model", "profile", "constant");
    if (profile == "constant") cfg.model.profile = ProfileKind::constant;
    else if (profile == "radial_power") cfg.model.profile = ProfileKind::radial_power;
    else if (profile == "radial_smooth") cfg.model.profile = ProfileKind::radial_smooth;
    else fail(filename, p.line_of("model", "profile"), "unknown profile '" + profile + "'");
    cfg.model.beta = p.number_or("model", "beta", 0.0);
    cfg.model.r0 = p.number_or("model", "r0", 1.0);
    cfg.model.scale = p.number_or("model", "scale", 1.0);
    if (const auto* e = p.find("model", "bounded_above"))
        cfg.model.bounded_above = p.to_number(*e, "bounded_above");
    else if (cfg.model.profile == ProfileKind::constant ||
             cfg.model.profile == ProfileKind::radial_power ||
             cfg.model.profile == ProfileKind::radial_smooth) {
        // All built-in families are bounded by the largest octant limit.
        if (!cfg.model.octant_limits.empty())
            cfg.model.bounded_above = cfg.model.max_limit();
    }
    try {
        cfg.model.check();
    } catch (const config_error& err) {
        fail(filename, p.line_of("model", "octant_limits"), err.what());
    }

    // [grid]
    cfg.step = p.number_or("grid", "step", cfg.step);
    cfg.horizon = p.number_or("grid", "horizon", cfg.horizon);
    cfg.cap = p.number_or("grid", "cap", cfg.cap);
    cfg.extension_budget =
        static_cast<int>(p.number_or("grid", "extension_budget", cfg.extension_budget));
    if (!(cfg.step > 0.0)) fail(filename, p.line_of("grid", "step"), "step must be > 0");
    if (!(cfg.horizon >= cfg.step))
        fail(filename, p.line_of("grid", "horizon"), "horizon must be >= step");
    if (!(cfg.cap > 0.0)) fail(filename, p.line_of("grid", "cap"), "cap must be > 0");

    // [mc]
    cfg.path_count = positive_count(p, "mc", "paths", 10000.0);
    cfg.master_seed =
        static_cast<std::uint64_t>(p.number_or("mc", "master_seed", 1.0));
    cfg.workers = static_cast<unsigned>(positive_count(p, "mc", "workers", 1.0));

    const std::string sec = to_string(cfg.kind);
    switch (cfg.kind) {
        case ExperimentKind::flt:
            cfg.n_values = p.list_or(sec, "n_values", cfg.n_values);
            cfg.eval_times = p.list_or(sec, "eval_times", cfg.eval_times);
            cfg.threshold = p.number_or(sec, "threshold", 0.05);
            break;
        case ExperimentKind::kr: {
            cfg.t_values = p.list_or(sec, "t_values", {1e4, 1e6});
            cfg.threshold = p.number_or(sec, "threshold", 0.15);
            const std::string fn = p.string_or(sec, "test_function", "disc");
            if (fn == "disc") cfg.kr_function = KrFunction::disc;
            else if (fn == "bump") cfg.kr_function = KrFunction::bump;
            else fail(filename, p.line_of(sec, "test_function"),
                      "unknown test_function '" + fn + "'");
            cfg.kr_radius = p.number_or(sec, "radius", 1.0);
            break;
        }
        case ExperimentKind::divergence:
            cfg.t_values = p.list_or(sec, "t_values", {1e2, 1e3, 1e4});
            cfg.exceed_level = p.number_or(sec, "exceed_level", 10.0);
            cfg.min_fraction = p.number_or(sec, "min_fraction", 0.99);
            break;
        case ExperimentKind::tau_moment:
            cfg.eval_times = p.list_or(sec, "eval_times", {0.5, 1.0, 2.0});
            break;
        case ExperimentKind::escape_rate:
            cfg.t_values = p.list_or(sec, "t_values", {1e4});
            cfg.min_fraction = p.number_or(sec, "min_fraction", -1.0);
            break;
        case ExperimentKind::sde_crosscheck:
            cfg.eval_times = p.list_or(sec, "eval_times", {0.5, 1.0});
            cfg.threshold = p.number_or(sec, "threshold", 0.05);
            break;
        case ExperimentKind::cauchy_mc: {
            cfg.eval_times = p.list_or(sec, "eval_times", {1.0});
            const std::string payoff = p.string_or(sec, "payoff", "sqnorm");
            if (payoff == "coordinate") cfg.payoff = Payoff::coordinate;
            else if (payoff == "sqnorm") cfg.payoff = Payoff::sqnorm;
            else if (payoff == "bump") cfg.payoff = Payoff::bump;
            else fail(filename, p.line_of(sec, "payoff"), "unknown payoff '" + payoff + "'");
            cfg.payoff_coordinate =
                positive_count(p, sec, "coordinate", 1.0) - 1;
            cfg.payoff_scale = p.number_or(sec, "payoff_scale", 1.0);
            const auto starts = p.list_or(sec, "starts", std::vector<double>(cfg.model.dimension, 0.0));
            if (starts.size() % cfg.model.dimension != 0)
                fail(filename, p.line_of(sec, "starts"),
                     "field 'starts': length must be a multiple of the dimension");
            for (std::size_t i = 0; i < starts.size(); i += cfg.model.dimension)
                cfg.start_points.emplace_back(starts.begin() + static_cast<long>(i),
                                              starts.begin() + static_cast<long>(i + cfg.model.dimension));
            if (const auto* e = p.find(sec, "expect"))
                cfg.expected = p.to_list(*e, "expect");
            break;
        }
    }
    cfg.threshold_overridden = p.find(sec, "threshold") != nullptr;

    cfg.output_dir = p.string_or("output", "dir", "out");
    p.check_all_used();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open config file");
    std::ostringstream body;
    body << in.rdbuf();
    return parse_config_text(body.str(), path);
}

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os.precision(17);
    auto list = [&os](const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
        os << "\n";
    };
    os << "[experiment]\nkind = " << to_string(kind) << "\n\n[model]\n";
    os << "dimension = " << model.dimension << "\noctant_limits = ";
    list(model.octant_limits);
    switch (model.profile) {
        case ProfileKind::constant: os << "profile = constant\n"; break;
        case ProfileKind::radial_power:
            os << "profile = radial_power\nbeta = " << model.beta << "\nr0 = " << model.r0 << "\n";
            break;
        case ProfileKind::radial_smooth:
            os << "profile = radial_smooth\nscale = " << model.scale << "\n";
            break;
    }
    if (model.bounded_above) os << "bounded_above = " << *model.bounded_above << "\n";
    os << "\n[grid]\nstep = " << step << "\nhorizon = " << horizon << "\ncap = " << cap
       << "\nextension_budget = " << extension_budget << "\n";
    os << "\n[mc]\npaths = " << path_count << "\nmaster_seed = " << master_seed
       << "\nworkers = " << workers << "\n";

    os << "\n[" << to_string(kind) << "]\n";
    switch (kind) {
        case ExperimentKind::flt:
            os << "n_values = "; list(n_values);
            os << "eval_times = "; list(eval_times);
            os << "threshold = " << threshold << "\n";
            break;
        case ExperimentKind::kr:
            os << "t_values = "; list(t_values);
            os << "test_function = " << (kr_function == KrFunction::disc ? "disc" : "bump") << "\n";
            os << "radius = " << kr_radius << "\nthreshold = " << threshold << "\n";
            break;
        case ExperimentKind::divergence:
            os << "t_values = "; list(t_values);
            os << "exceed_level = " << exceed_level << "\nmin_fraction = " << min_fraction << "\n";
            break;
        case ExperimentKind::tau_moment:
            os << "eval_times = "; list(eval_times);
            break;
        case ExperimentKind::escape_rate:
            os << "t_values = "; list(t_values);
            os << "min_fraction = " << min_fraction << "\n";
            break;
        case ExperimentKind::sde_crosscheck:
            os << "eval_times = "; list(eval_times);
            os << "threshold = " << threshold << "\n";
            break;
        case ExperimentKind::cauchy_mc: {
            os << "eval_times = "; list(eval_times);
            os << "payoff = "
               << (payoff == Payoff::coordinate ? "coordinate"
                   : payoff == Payoff::sqnorm   ? "sqnorm"
                                                : "bump")
               << "\n";
            os << "coordinate = " << payoff_coordinate + 1 << "\n";
            os << "payoff_scale = " << payoff_scale << "\n";
            std::vector<double> flat;
            for (const auto& s : start_points) flat.insert(flat.end(), s.begin(), s.end());
            os << "starts = "; list(flat);
            if (!expected.empty()) { os << "expect = "; list(expected); }
            break;
        }
    }
    os << "\n[output]\ndir = " << output_dir << "\n";
    return os.str();
}

}  // namespace tcw
