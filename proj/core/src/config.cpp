/// @file config.cpp
/// @brief Strict JSON configuration with canonical serialization.

#include "onsager/config.hpp"
#include "onsager/errors.hpp"

#include <algorithm>
#include <sstream>
#include <type_traits>

namespace onsager {

namespace {

// Walks one JSON object, remembering which keys were consumed.
class Section {
public:
    Section(const Json& j, std::string pointer) : j_(j), ptr_(std::move(pointer)) {
        if (!j_.is_object()) fail(ErrorKind::precondition, "config: expected an object at " + where());
    }

    template <typename T>
    void get(const char* key, T& out) {
        seen_.push_back(key);
        if (!j_.contains(key)) return;
        const Json& v = j_.at(key);
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw std::invalid_argument("boolean");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) throw std::invalid_argument("integer");
                if constexpr (std::is_unsigned_v<T>)
                    if (v.is_number_integer() && !v.is_number_unsigned()) throw std::invalid_argument("non-negative integer");
            } else if constexpr (std::is_floating_point_v<T>) {
                if (!v.is_number()) throw std::invalid_argument("number");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw std::invalid_argument("string");
            } else {
                if (!v.is_array()) throw std::invalid_argument("array of numbers");
                for (const auto& x : v)
                    if (!x.is_number()) throw std::invalid_argument("array of numbers");
            }
        } catch (const std::invalid_argument& e) {
            fail(ErrorKind::precondition, "config: expected " + std::string(e.what()) + " at " + where(key));
        }
        out = v.get<T>();
    }

    Section child(const char* key) {
        seen_.push_back(key);
        static const Json empty = Json::object();
        return Section(j_.contains(key) ? j_.at(key) : empty, ptr_ + "/" + key);
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (std::find(seen_.begin(), seen_.end(), k) == seen_.end())
                fail(ErrorKind::precondition, "config: unknown key at " + where(k));
        }
    }

private:
    std::string where(const std::string& key = {}) const {
        std::string p = ptr_;
        if (!key.empty()) {
            p += '/';
            for (char c : key) {
                if (c == '~') p += "~0";
                else if (c == '/') p += "~1";
                else p += c;
            }
        }
        return p.empty() ? "/" : p;
    }

    const Json& j_;
    std::string ptr_;
    std::vector<std::string> seen_;
};

Json gen_json(const GenConfig& g) {
    Json j;
    j["kind"] = g.kind;
    j["grid"] = g.grid;
    j["extent"] = g.extent;
    j["alpha"] = g.alpha;
    j["cutoff"] = g.cutoff;
    j["seed"] = g.seed;
    j["nu"] = g.nu;
    j["t"] = g.t;
    j["amplitude"] = g.amplitude;
    j["shear_u"] = g.shear_u;
    j["shear_w"] = g.shear_w;
    j["frames"] = g.frames;
    j["dt"] = g.dt;
    return j;
}

Json diagnose_json(const DiagnoseConfig& d) {
    Json j;
    j["alpha"] = d.alpha;
    j["eps_h"] = d.eps_h;
    j["phi_radius"] = d.phi_radius;
    j["identity"] = d.identity;
    j["kappa"] = d.kappa;
    return j;
}

Json boundary_json(const BoundaryConfig& b) {
    Json j;
    j["etas"] = b.etas;
    j["eta0"] = b.eta0;
    j["gamma"] = b.gamma;
    j["energy_tolerance"] = b.energy_tolerance;
    j["beta"] = b.beta;
    return j;
}

Json sweep_json(const SweepConfig& s) {
    Json j;
    j["grid"] = s.grid;
    j["extent"] = s.extent;
    j["initial"] = s.initial;
    j["amplitude"] = s.amplitude;
    j["mean_speed"] = s.mean_speed;
    j["nus"] = s.nus;
    j["t_star"] = s.t_star;
    j["dt"] = s.dt;
    j["cfl_limit"] = s.cfl_limit;
    j["etas"] = s.etas;
    j["frames"] = s.frames;
    return j;
}

Json global_json(const RunConfig& c) {
    Json j;
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    j["threads"] = c.threads;
    return j;
}

} // namespace

RunConfig parse_config(const Json& j) {
    RunConfig c;
    Section root(j, "");
    root.get("output_dir", c.output_dir);
    root.get("seed", c.seed);
    root.get("threads", c.threads);
    if (c.threads < 1) fail(ErrorKind::precondition, "config: /threads must be >= 1");

    Section g = root.child("gen");
    g.get("kind", c.gen.kind);
    g.get("grid", c.gen.grid);
    g.get("extent", c.gen.extent);
    g.get("alpha", c.gen.alpha);
    g.get("cutoff", c.gen.cutoff);
    g.get("seed", c.gen.seed);
    g.get("nu", c.gen.nu);
    g.get("t", c.gen.t);
    g.get("amplitude", c.gen.amplitude);
    g.get("shear_u", c.gen.shear_u);
    g.get("shear_w", c.gen.shear_w);
    g.get("frames", c.gen.frames);
    g.get("dt", c.gen.dt);
    g.finish();

    Section d = root.child("diagnose");
    d.get("alpha", c.diagnose.alpha);
    d.get("eps_h", c.diagnose.eps_h);
    d.get("phi_radius", c.diagnose.phi_radius);
    d.get("identity", c.diagnose.identity);
    d.get("kappa", c.diagnose.kappa);
    d.finish();

    Section b = root.child("boundary");
    b.get("etas", c.boundary.etas);
    b.get("eta0", c.boundary.eta0);
    b.get("gamma", c.boundary.gamma);
    b.get("energy_tolerance", c.boundary.energy_tolerance);
    b.get("beta", c.boundary.beta);
    b.finish();

    Section s = root.child("sweep");
    s.get("grid", c.sweep.grid);
    s.get("extent", c.sweep.extent);
    s.get("initial", c.sweep.initial);
    s.get("amplitude", c.sweep.amplitude);
    s.get("mean_speed", c.sweep.mean_speed);
    s.get("nus", c.sweep.nus);
    s.get("t_star", c.sweep.t_star);
    s.get("dt", c.sweep.dt);
    s.get("cfl_limit", c.sweep.cfl_limit);
    s.get("etas", c.sweep.etas);
    s.get("frames", c.sweep.frames);
    s.finish();

    root.finish();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    Json j;
    try {
        j = read_json(path);
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(ErrorKind::precondition, "config: cannot parse " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

Json to_json(const RunConfig& c) {
    Json j = global_json(c);
    j["gen"] = gen_json(c.gen);
    j["diagnose"] = diagnose_json(c.diagnose);
    j["boundary"] = boundary_json(c.boundary);
    j["sweep"] = sweep_json(c.sweep);
    return j;
}

Json to_json(const RunConfig& c, const std::string& command) {
    Json j = global_json(c);
    if (command == "gen") j["gen"] = gen_json(c.gen);
    else if (command == "diagnose") j["diagnose"] = diagnose_json(c.diagnose);
    else if (command == "boundary") j["boundary"] = boundary_json(c.boundary);
    else if (command == "sweep") j["sweep"] = sweep_json(c.sweep);
    return j;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) fail(ErrorKind::precondition, "bad number '" + item + "' in list '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) fail(ErrorKind::precondition, "empty list");
    return out;
}

std::vector<double> parse_extent(const std::string& text) {
    std::string t = text;
    std::replace(t.begin(), t.end(), 'x', ',');
    return parse_list(t);
}

} // namespace onsager
