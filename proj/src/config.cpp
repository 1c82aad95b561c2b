#include "hermeis/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "hermeis/errors.hpp"

namespace hermeis {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using KeyMap = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

KeyMap tokenize(const std::string& text, const std::string& origin) {
    KeyMap map;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(line) + ": expected 'key = value'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(origin + ":" + std::to_string(line) + ": empty key or value");
        auto [it, inserted] = map.emplace(key, Entry{value, line});
        if (!inserted)
            throw ParseError(origin + ":" + std::to_string(line) + ": duplicate key '" + key +
                             "' (first at line " + std::to_string(it->second.line) + ")");
    }
    return map;
}

double parse_double(const std::string& origin, const std::string& key, const Entry& e) {
    try {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(origin + ":" + std::to_string(e.line) + ": key '" + key +
                         "' expects a number, got '" + e.value + "'");
    }
}

long long parse_int(const std::string& origin, const std::string& key, const Entry& e) {
    double v = parse_double(origin, key, e);
    auto i = static_cast<long long>(v);
    if (static_cast<double>(i) != v)
        throw ParseError(origin + ":" + std::to_string(e.line) + ": key '" + key +
                         "' expects an integer, got '" + e.value + "'");
    return i;
}

bool parse_bool(const std::string& origin, const std::string& key, const Entry& e) {
    std::string v = e.value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParseError(origin + ":" + std::to_string(e.line) + ": key '" + key +
                     "' expects a boolean, got '" + e.value + "'");
}

class Reader {
public:
    Reader(const KeyMap& map, std::string origin) : map_(map), origin_(std::move(origin)) {}

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    double number(const std::string& key, double dflt) const {
        auto it = map_.find(key);
        if (it == map_.end()) return dflt;
        it->second.used = true;
        return parse_double(origin_, key, it->second);
    }
    long long integer(const std::string& key, long long dflt) const {
        auto it = map_.find(key);
        if (it == map_.end()) return dflt;
        it->second.used = true;
        return parse_int(origin_, key, it->second);
    }
    bool boolean(const std::string& key, bool dflt) const {
        auto it = map_.find(key);
        if (it == map_.end()) return dflt;
        it->second.used = true;
        return parse_bool(origin_, key, it->second);
    }
    std::string text(const std::string& key) const {
        auto it = map_.find(key);
        if (it == map_.end()) return {};
        it->second.used = true;
        return it->second.value;
    }

    void reject_unused() const {
        for (const auto& [key, entry] : map_)
            if (!entry.used)
                throw ParseError(origin_ + ":" + std::to_string(entry.line) + ": unknown key '" +
                                 key + "'");
    }

    const KeyMap& map() const { return map_; }
    const std::string& origin() const { return origin_; }

private:
    const KeyMap& map_;
    std::string origin_;
};

std::vector<double> parse_number_list(const std::string& origin, const std::string& key,
                                      const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError(origin + ": key '" + key + "': bad number '" + item + "'");
        }
    }
    return out;
}

TableModel load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open impedance table '" + path + "'");
    TableModel table;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        std::replace(stripped.begin(), stripped.end(), ',', ' ');
        std::istringstream row(stripped);
        double f, re, im;
        if (!(row >> f >> re >> im)) {
            if (line == 1) continue;  // tolerate a header row
            throw ParseError(path + ":" + std::to_string(line) +
                             ": expected 'freq_hz, re_ohm, im_ohm'");
        }
        table.freq_hz.push_back(f);
        table.z.emplace_back(re, im);
    }
    table.validate();
    return table;
}

std::vector<int> channel_ids(const KeyMap& map, const std::string& origin) {
    std::vector<int> ids;
    for (const auto& [key, entry] : map) {
        if (key.rfind("channel.", 0) != 0) continue;
        auto rest = key.substr(8);
        auto dot = rest.find('.');
        if (dot == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(entry.line) +
                             ": channel keys look like channel.<id>.<field>");
        int id = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + dot, id);
        if (ec != std::errc() || p != rest.data() + dot)
            throw ParseError(origin + ":" + std::to_string(entry.line) + ": bad channel id in '" +
                             key + "'");
        if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text, const std::string& origin) {
    KeyMap map = tokenize(text, origin);
    Reader r(map, origin);
    SweepConfig cfg;

    cfg.clocks.f_s = r.number("clocks.f_s", cfg.clocks.f_s);
    cfg.clocks.f_clk = r.number("clocks.f_clk", cfg.clocks.f_clk);
    cfg.clocks.f_dds_clk = r.number("clocks.f_dds_clk", cfg.clocks.f_dds_clk);
    cfg.clocks.fcw_bits = static_cast<int>(r.integer("clocks.fcw_bits", cfg.clocks.fcw_bits));

    cfg.adc.v_dd = r.number("adc.v_dd", cfg.adc.v_dd);
    cfg.adc.bits = static_cast<int>(r.integer("adc.bits", cfg.adc.bits));
    cfg.adc.ideal = r.boolean("adc.ideal", cfg.adc.ideal);

    cfg.rheostat.r_max = r.number("rheostat.r_max", cfg.rheostat.r_max);
    cfg.rheostat.r_min = r.number("rheostat.r_min", 0.002 * cfg.rheostat.r_max);
    cfg.rheostat.r_amp = r.number("rheostat.r_amp", cfg.rheostat.r_amp);

    cfg.cal.alpha = r.number("cal.alpha", cfg.cal.alpha);

    cfg.source_vpp = r.number("drive.source_vpp", cfg.source_vpp);
    cfg.n_in = static_cast<int>(r.integer("drive.n_in", cfg.n_in));
    cfg.v_offset = r.number("excitation.v_offset", cfg.v_offset);
    cfg.phase = r.number("excitation.phase_rad", cfg.phase);
    cfg.v_mid = r.number("excitation.v_mid", cfg.v_mid);

    cfg.ref_noise_rms = r.number("run.ref_noise_rms", cfg.ref_noise_rms);
    cfg.ref_seed = static_cast<std::uint64_t>(r.integer("run.ref_seed", 0));
    cfg.controller_overhead_s = r.number("run.controller_overhead_s", cfg.controller_overhead_s);
    cfg.threads = static_cast<int>(r.integer("run.threads", 0));

    const bool has_list = r.has("grid.points");
    const bool has_span = r.has("grid.f_lo") || r.has("grid.f_hi") || r.has("grid.n_points");
    if (has_list && has_span)
        throw ValidationError(origin + ": give either grid.points or a grid.f_lo/f_hi/n_points span");
    if (has_list) {
        cfg.grid = parse_number_list(origin, "grid.points", r.text("grid.points"));
    } else if (has_span) {
        double lo = r.number("grid.f_lo", 0.0);
        double hi = r.number("grid.f_hi", 0.0);
        int n = static_cast<int>(r.integer("grid.n_points", 0));
        cfg.grid = log_grid(lo, hi, n);
    } else {
        throw ValidationError(origin + ": no frequency grid given");
    }

    for (int id : channel_ids(map, origin)) {
        const std::string pfx = "channel." + std::to_string(id) + ".";
        ChannelConfig ch;
        ch.id = id;
        const bool randles = r.has(pfx + "r_s") || r.has(pfx + "r_f") || r.has(pfx + "c_dl");
        const bool table = r.has(pfx + "table");
        if (randles && table)
            throw ValidationError(origin + ": channel " + std::to_string(id) +
                                  " mixes a Randles model with a table");
        if (table) {
            ch.dut = load_table(r.text(pfx + "table"));
        } else if (randles) {
            RandlesModel m;
            m.r_series = r.number(pfx + "r_s", 0.0);
            m.r_faradaic = r.number(pfx + "r_f", 0.0);
            m.c_dl = r.number(pfx + "c_dl", 0.0);
            ch.dut = m;
        } else {
            throw ValidationError(origin + ": channel " + std::to_string(id) +
                                  " needs r_s/r_f/c_dl or a table");
        }
        ch.n_out = static_cast<int>(r.integer(pfx + "n_out", ch.n_out));
        ch.readout_sign = r.number(pfx + "sign", ch.readout_sign);
        ch.noise_rms = r.number(pfx + "noise_rms", 0.0);
        ch.first_cycle_glitch = r.number(pfx + "glitch", 0.0);
        ch.rng_seed = static_cast<std::uint64_t>(r.integer(pfx + "seed", 0));
        cfg.channels.push_back(ch);
    }

    r.reject_unused();
    cfg.validate();
    return cfg;
}

SweepConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void apply_seed_override(SweepConfig& cfg, const char* env_value) {
    if (!env_value || !*env_value) return;
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(env_value, env_value + std::string(env_value).size(), seed);
    if (ec != std::errc() || *p != '\0')
        throw ValidationError(std::string("HERMEIS_SEED must be an unsigned integer, got '") +
                              env_value + "'");
    cfg.ref_seed = seed;
    for (auto& ch : cfg.channels) ch.rng_seed = seed + static_cast<std::uint64_t>(ch.id);
}

}  // namespace hermeis
