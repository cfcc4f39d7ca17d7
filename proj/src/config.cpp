#include "intraday/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef INTRADAY_PRESET_DIR
#define INTRADAY_PRESET_DIR "presets"
#endif

namespace intraday {

namespace {

using nlohmann::json;

std::size_t line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

class Reader {
public:
    Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        std::ostringstream msg;
        msg << source_;
        const auto pos = text_.find("\"" + key + "\"");
        if (pos != std::string::npos) msg << ":" << line_of(text_, pos);
        msg << ": key '" << key << "': " << what;
        throw ParamError(msg.str());
    }

    void check_keys(const json& obj, const std::set<std::string>& allowed) const {
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k)) fail(k, "unknown key");
    }

    double number(const json& obj, const std::string& key) const {
        if (!obj.contains(key)) fail(key, "missing");
        const json& v = obj.at(key);
        if (!v.is_number()) fail(key, "expected a number");
        return v.get<double>();
    }

private:
    const std::string& text_;
    std::string source_;
};

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << source << ":" << line_of(text, e.byte) << ": malformed JSON (" << e.what() << ")";
        throw ParamError(msg.str());
    }
    if (!doc.is_object()) throw ParamError(source + ": top level must be an object");

    Reader rd(text, source);
    rd.check_keys(doc, {"name", "version", "sigma0", "sigma_d", "beta", "eta", "mu", "nu", "gamma", "rho",
                        "horizon_hours", "jump", "delay_hours", "initial_state"});

    RunConfig cfg;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) rd.fail("name", "expected a string");
        cfg.name = doc["name"].get<std::string>();
    }
    ModelParams& p = cfg.params;
    p.sigma0 = rd.number(doc, "sigma0");
    p.sigma_d = rd.number(doc, "sigma_d");
    if (!doc.contains("beta")) rd.fail("beta", "missing");
    if (doc["beta"].is_string()) {
        const auto b = doc["beta"].get<std::string>();
        if (b != "infinite") rd.fail("beta", "expected a number or \"infinite\"");
        p.pure_trader = true;
        p.beta = 0.0;
    } else {
        p.beta = rd.number(doc, "beta");
    }
    p.eta = rd.number(doc, "eta");
    p.mu = rd.number(doc, "mu");
    p.nu = rd.number(doc, "nu");
    p.gamma = rd.number(doc, "gamma");
    p.rho = rd.number(doc, "rho");
    p.horizon = rd.number(doc, "horizon_hours") * 3600.0;
    try {
        validate(p);
    } catch (const ParamError& e) {
        throw ParamError(source + ": " + e.what());
    }

    if (doc.contains("jump")) {
        const json& jb = doc["jump"];
        if (!jb.is_object()) rd.fail("jump", "expected an object");
        rd.check_keys(jb, {"lambda_per_day", "p_plus", "delta_plus", "delta_minus", "pi_plus", "pi_minus"});
        JumpParams& j = cfg.jumps;
        j.lambda = rd.number(jb, "lambda_per_day") / 86400.0;
        j.p_plus = rd.number(jb, "p_plus");
        j.delta_plus = rd.number(jb, "delta_plus");
        j.delta_minus = rd.number(jb, "delta_minus");
        j.pi_plus = rd.number(jb, "pi_plus");
        j.pi_minus = rd.number(jb, "pi_minus");
        try {
            validate(j);
        } catch (const ParamError& e) {
            throw ParamError(source + ": jump: " + e.what());
        }
        cfg.has_jumps = true;
    } else {
        cfg.jumps.lambda = 0.0;
    }

    if (doc.contains("delay_hours")) {
        const double h = rd.number(doc, "delay_hours") * 3600.0;
        if (h < 0 || h > p.horizon) rd.fail("delay_hours", "must lie in [0, horizon_hours]");
        cfg.delay = h;
    }

    if (doc.contains("initial_state")) {
        const json& st = doc["initial_state"];
        if (!st.is_object()) rd.fail("initial_state", "expected an object");
        rd.check_keys(st, {"x0", "y0", "d0"});
        if (st.contains("x0")) cfg.initial.x = rd.number(st, "x0");
        if (st.contains("y0")) cfg.initial.y = rd.number(st, "y0");
        if (st.contains("d0")) cfg.initial.d = rd.number(st, "d0");
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("INTRADAY_PRESET_DIR")) return env;
    return INTRADAY_PRESET_DIR;
}

std::filesystem::path resolve_config(const std::string& name_or_path) {
    const std::filesystem::path direct(name_or_path);
    if (std::filesystem::exists(direct)) return direct;
    if (direct.extension().empty() && direct.parent_path().empty()) {
        const auto preset = preset_directory() / (name_or_path + ".json");
        if (std::filesystem::exists(preset)) return preset;
    }
    throw IoError("config not found: " + name_or_path);
}

} // namespace intraday
