#include "maxineq/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maxineq::io {

namespace {

std::string lower_ext(const std::string& file) {
    const auto dot = file.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = file.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

std::ifstream open_or_throw(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    return in;
}

double parse_double(const std::string& token, std::size_t line_no, const char* what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse " +
                                 std::string(what) + " '" + token + "'");
    }
}

std::string trimmed(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.back())) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && is_space(s[i])) ++i;
    return s.substr(i);
}

nlohmann::json parse_json_stream(std::istream& in) {
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("JSON parse error: ") + e.what());
    }
}

// numbers that JSON cannot carry become null (only degenerate reports)
nlohmann::json json_number(double x) {
    if (std::isfinite(x)) return x;
    return nullptr;
}

} // namespace

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

Path read_path_csv(std::istream& in) {
    std::string line;
    std::vector<double> values;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        if (!saw_header) {
            saw_header = true;
            if (line == "s") continue; // header row is optional
        }
        values.push_back(parse_double(line, line_no, "path value"));
    }
    if (values.empty()) throw std::runtime_error("path CSV: no values");
    return Path(std::move(values));
}

Path read_path_json(std::istream& in) {
    const nlohmann::json j = parse_json_stream(in);
    if (!j.is_object() || !j.contains("values") || !j["values"].is_array())
        throw std::runtime_error("path JSON: expected {\"values\": [...]}");
    std::vector<double> values;
    for (const auto& v : j["values"]) {
        if (!v.is_number()) throw std::runtime_error("path JSON: non-numeric value");
        values.push_back(v.get<double>());
    }
    if (values.empty()) throw std::runtime_error("path JSON: empty values");
    return Path(std::move(values));
}

Path load_path(const std::string& file) {
    auto in = open_or_throw(file);
    return lower_ext(file) == "json" ? read_path_json(in) : read_path_csv(in);
}

void write_path_csv(std::ostream& out, const Path& path) {
    out << "s\n";
    for (double v : path.values()) out << format_double(v) << "\n";
}

void write_path_json(std::ostream& out, const Path& path) {
    nlohmann::json j;
    j["values"] = std::vector<double>(path.values().begin(), path.values().end());
    out << j.dump() << "\n";
}

SampledFunction read_sampled_csv(std::istream& in) {
    std::string line;
    std::vector<double> t, v;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        line = trimmed(line);
        if (line.empty()) continue;
        if (!saw_header) {
            saw_header = true;
            if (line.rfind("t,", 0) == 0) continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 't,value'");
        t.push_back(parse_double(line.substr(0, comma), line_no, "time"));
        v.push_back(parse_double(line.substr(comma + 1), line_no, "value"));
    }
    return SampledFunction(std::move(t), std::move(v));
}

SampledFunction load_sampled(const std::string& file) {
    auto in = open_or_throw(file);
    return read_sampled_csv(in);
}

void write_sampled_csv(std::ostream& out, const SampledFunction& f) {
    out << "t,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        out << format_double(f.times[i]) << "," << format_double(f.values[i]) << "\n";
}

TreeModel tree_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("levels") || !j["levels"].is_array())
        throw std::runtime_error("tree JSON: expected {\"levels\": [[...]]}");
    TreeModel model;
    for (const auto& jlevel : j["levels"]) {
        if (!jlevel.is_array()) throw std::runtime_error("tree JSON: level must be an array");
        std::vector<TreeModel::Node> level;
        for (const auto& jnode : jlevel) {
            TreeModel::Node node;
            if (!jnode.contains("value") || !jnode["value"].is_number())
                throw std::runtime_error("tree JSON: node without numeric value");
            node.value = jnode["value"].get<double>();
            if (jnode.contains("children")) {
                for (const auto& jc : jnode["children"]) {
                    if (!jc.contains("node") || !jc.contains("prob"))
                        throw std::runtime_error("tree JSON: child needs node and prob");
                    node.children.push_back(
                        {jc["node"].get<std::size_t>(), jc["prob"].get<double>()});
                }
            }
            level.push_back(std::move(node));
        }
        model.levels.push_back(std::move(level));
    }
    model.validate();
    return model;
}

nlohmann::json tree_to_json(const TreeModel& model) {
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& level : model.levels) {
        nlohmann::json jlevel = nlohmann::json::array();
        for (const auto& node : level) {
            nlohmann::json jnode;
            jnode["value"] = node.value;
            nlohmann::json jchildren = nlohmann::json::array();
            for (const auto& e : node.children)
                jchildren.push_back({{"node", e.node}, {"prob", e.prob}});
            jnode["children"] = std::move(jchildren);
            jlevel.push_back(std::move(jnode));
        }
        levels.push_back(std::move(jlevel));
    }
    return nlohmann::json{{"levels", std::move(levels)}};
}

TreeModel load_tree(const std::string& file) {
    auto in = open_or_throw(file);
    return tree_from_json(parse_json_stream(in));
}

PathSampler sampler_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("model"))
        throw std::runtime_error("sampler config: expected an object with a 'model' key");
    PathSampler s;
    s.model = PathSampler::parse_model(j["model"].get<std::string>());
    for (const auto& [key, value] : j.items()) {
        if (key == "model") continue;
        if (key == "seed") s.seed = value.get<std::uint64_t>();
        else if (key == "steps") s.steps = value.get<std::size_t>();
        else if (key == "horizon") s.horizon = value.get<double>();
        else if (key == "start") s.start = value.get<double>();
        else if (key == "sigma") s.sigma = value.get<double>();
        else if (key == "mu") s.mu = value.get<double>();
        else if (key == "drift") s.drift = value.get<double>();
        else if (key == "tree") s.tree = tree_from_json(value);
        else throw std::runtime_error("sampler config: unknown key '" + key + "'");
    }
    s.validate();
    return s;
}

PathSampler load_sampler(const std::string& file) {
    auto in = open_or_throw(file);
    return sampler_from_json(parse_json_stream(in));
}

nlohmann::json to_json(const PathIneqReport& report) {
    nlohmann::json j;
    j["inequality"] = to_string(report.inequality);
    if (report.p) j["p"] = *report.p; else j["p"] = nullptr;
    j["lhs"] = json_number(report.lhs);
    j["rhs"] = json_number(report.rhs);
    j["slack"] = json_number(report.slack);
    j["holds"] = report.holds;
    j["degenerate"] = report.degenerate;
    return j;
}

nlohmann::json to_json(const MCReport& report) {
    nlohmann::json j;
    j["inequality"] = report.inequality;
    if (report.p) j["p"] = *report.p; else j["p"] = nullptr;
    j["lhs"] = json_number(report.lhs);
    j["lhs_stderr"] = json_number(report.lhs_stderr);
    j["rhs"] = json_number(report.rhs);
    j["rhs_stderr"] = json_number(report.rhs_stderr);
    j["gap"] = json_number(report.gap);
    j["verdict"] = to_string(report.verdict);
    j["n"] = report.n;
    j["exact"] = report.exact;
    if (report.psi_lhs) j["psi_lhs"] = json_number(*report.psi_lhs);
    if (report.psi_rhs) j["psi_rhs"] = json_number(*report.psi_rhs);
    return j;
}

nlohmann::json to_json(const IntegralEstimate& estimate) {
    nlohmann::json j;
    j["value"] = estimate.value;
    j["left_limit_value"] = estimate.left_limit_value;
    j["sampling_gap"] = estimate.sampling_gap;
    j["partition_values"] = estimate.partition_values;
    j["converged"] = estimate.converged;
    j["spread"] = estimate.spread;
    return j;
}

nlohmann::json to_json(const DoobDecomposition& decomposition) {
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t l = 0; l < decomposition.martingale.size(); ++l) {
        nlohmann::json jlevel = nlohmann::json::array();
        for (std::size_t n = 0; n < decomposition.martingale[l].size(); ++n)
            jlevel.push_back({{"m", decomposition.martingale[l][n]},
                              {"a", decomposition.compensator[l][n]}});
        levels.push_back(std::move(jlevel));
    }
    return nlohmann::json{{"levels", std::move(levels)}};
}

const char* kSharpnessHeader =
    "alpha,p,norm_ST,norm_SbarT,rhs_sharkdoob,gap,mc_norm_ST,mc_norm_SbarT,mc_stderr,"
    "capped_fraction";

std::string sharpness_csv_row(const SharpnessReport& row) {
    const double capped_fraction =
        row.n_samples == 0 ? 0.0
                           : static_cast<double>(row.n_capped) /
                                 static_cast<double>(row.n_samples);
    std::ostringstream os;
    os << format_double(row.alpha) << ',' << format_double(row.p) << ','
       << format_double(row.norm_terminal) << ',' << format_double(row.norm_max) << ','
       << format_double(row.rhs_sharp) << ',' << format_double(row.gap) << ','
       << format_double(row.mc_norm_terminal) << ',' << format_double(row.mc_norm_max) << ','
       << format_double(row.mc_stderr) << ',' << format_double(capped_fraction);
    return os.str();
}

} // namespace maxineq::io
