#include "qcsim/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "qcsim/errors.hpp"

namespace qcsim {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"protocol", {"r", "frames", "slots_per_frame", "key_bits", "margin", "block_prob", "seed"}},
        {"channel", {"eta_out", "eta_back"}},
        {"detector", {"electronic_noise_var"}},
        {"attack", {"kind", "tau", "fake_r", "quadrature", "sigma_m"}},
        {"thresholds", {"pearson", "ratio", "cd_margin"}},
        {"spectrum", {"start_hz", "stop_hz", "rbw_hz", "signal_hz", "averages"}},
        {"sweep", {"repeats", "calibration_slots"}},
    };
    return keys;
}

void check_keys(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) throw ConfigError(section, "unknown section");
        for (const auto& [key, _] : body) {
            if (!it->second.contains(key)) throw ConfigError(section + "." + key, "unknown key");
        }
    }
}

template <class T>
T read(const pt::ptree& tree, const std::string& field, T fallback) {
    const auto node = tree.get_optional<std::string>(field);
    if (!node) return fallback;
    std::istringstream in(*node);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw ConfigError(field, fmt::format("cannot parse '{}'", *node));
    }
    return value;
}

std::optional<double> read_optional(const pt::ptree& tree, const std::string& field) {
    if (!tree.get_optional<std::string>(field)) return std::nullopt;
    return read<double>(tree, field, 0.0);
}

AttackSpec read_attack(const pt::ptree& tree) {
    const auto kind = tree.get<std::string>("attack.kind", "none");
    if (kind == "none") return NoAttack{};
    if (kind == "tap") return TapAttack{read<double>(tree, "attack.tau", 0.1)};
    if (kind == "intercept_resend") return InterceptResendAttack{read<double>(tree, "attack.fake_r", 1.0)};
    if (kind == "qnd") {
        const auto q = tree.get<std::string>("attack.quadrature", "X");
        if (q != "X" && q != "Y") throw ConfigError("attack.quadrature", "must be X or Y");
        return QndAttack{q == "X" ? Quadrature::X : Quadrature::Y, read<double>(tree, "attack.sigma_m", 1.0)};
    }
    throw ConfigError("attack.kind", fmt::format("unknown attack '{}' (none, tap, intercept_resend, qnd)", kind));
}

void apply_override(pt::ptree& tree, const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError(item, "override must look like section.key=value");
    }
    const std::string field = item.substr(0, eq);
    const auto dot = field.find('.');
    if (dot == std::string::npos) throw ConfigError(field, "override key must be section.key");
    const auto section = known_keys().find(field.substr(0, dot));
    if (section == known_keys().end() || !section->second.contains(field.substr(dot + 1))) {
        throw ConfigError(field, "unknown key");
    }
    tree.put(field, item.substr(eq + 1));
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config", fmt::format("line {}: {}", e.line(), e.message()));
    }
    check_keys(tree);
    for (const auto& o : overrides) apply_override(tree, o);

    RunConfig rc;
    SessionConfig& s = rc.session;
    s.r = read(tree, "protocol.r", s.r);
    s.frames = read(tree, "protocol.frames", s.frames);
    s.slots_per_frame = read(tree, "protocol.slots_per_frame", s.slots_per_frame);
    s.key_bits = tree.get<std::string>("protocol.key_bits", "");
    s.margin = read(tree, "protocol.margin", s.margin);
    s.block_prob = read(tree, "protocol.block_prob", s.block_prob);
    rc.has_seed = tree.get_optional<std::string>("protocol.seed").has_value();
    s.seed = read<std::uint64_t>(tree, "protocol.seed", 0);
    s.eta_out = read(tree, "channel.eta_out", s.eta_out);
    s.eta_back = read(tree, "channel.eta_back", s.eta_back);
    s.detector.electronic_noise_var = read(tree, "detector.electronic_noise_var", s.detector.electronic_noise_var);
    s.attack = read_attack(tree);
    s.thresholds.pearson = read_optional(tree, "thresholds.pearson");
    s.thresholds.ratio = read_optional(tree, "thresholds.ratio");
    s.thresholds.cd_margin = read_optional(tree, "thresholds.cd_margin");

    rc.spectrum.start_hz = read(tree, "spectrum.start_hz", rc.spectrum.start_hz);
    rc.spectrum.stop_hz = read(tree, "spectrum.stop_hz", rc.spectrum.stop_hz);
    rc.spectrum.rbw_hz = read(tree, "spectrum.rbw_hz", rc.spectrum.rbw_hz);
    rc.spectrum.averages = read(tree, "spectrum.averages", rc.spectrum.averages);
    rc.spectrum_signal_hz = read(tree, "spectrum.signal_hz", rc.spectrum_signal_hz);
    rc.sweep_repeats = read(tree, "sweep.repeats", rc.sweep_repeats);
    rc.calibration_slots = read(tree, "sweep.calibration_slots", rc.calibration_slots);
    if (rc.sweep_repeats == 0) throw ConfigError("sweep.repeats", "must be >= 1");
    if (rc.calibration_slots < 2) throw ConfigError("sweep.calibration_slots", "must be >= 2");
    return rc;
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", fmt::format("cannot read '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides);
}

}  // namespace qcsim
