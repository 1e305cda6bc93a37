#include "lpalg/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace lpalg {

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += format(row[i]);
    }
    rows_.push_back(std::move(line));
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += row[i];
    }
    rows_.push_back(std::move(line));
}

std::string CsvWriter::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& r : rows_) {
        out += r;
        out += '\n';
    }
    return out;
}

void CsvWriter::write(const std::string& path) const { write_file(path, str()); }

void write_file(const std::string& path, const std::string& content) {
    std::ofstream ofs(path, std::ios::binary);
    if (!ofs) throw std::runtime_error("cannot open for writing: " + path);
    ofs << content;
}

nlohmann::json group_to_json(const GroupModel& model) {
    nlohmann::json j;
    switch (model.kind()) {
        case GroupKind::IntegerLattice: j["kind"] = "integer_lattice"; break;
        case GroupKind::DiscreteHeisenberg: j["kind"] = "discrete_heisenberg"; break;
        case GroupKind::CyclicGroup: j["kind"] = "cyclic"; break;
        case GroupKind::MeshLine: j["kind"] = "mesh_line"; break;
    }
    j["params"] = {{"dim", model.dim()},
                   {"haar_mass", model.haar_mass()},
                   {"cyclic_order", model.cyclic_order()},
                   {"mesh_step", model.mesh_step()}};
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : model.generating_set()) {
        nlohmann::json coords = nlohmann::json::array();
        for (int i = 0; i < g.dim(); ++i) coords.push_back(g[i]);
        gens.push_back(coords);
    }
    j["generator_list"] = gens;
    return j;
}

nlohmann::json weight_to_json(const Weight& w) {
    nlohmann::json j;
    j["descriptor"] = w.descriptor();
    j["scale"] = w.scale();
    auto env = w.envelope();
    if (env.available) {
        j["envelope"] = {{"exact", env.exact},
                         {"logK", env.logK},
                         {"D", env.D},
                         {"Cexp", env.Cexp}};
        nlohmann::json sub = nlohmann::json::array();
        for (auto& [c, g] : env.subexp) sub.push_back({{"C", c}, {"gamma", g}});
        j["envelope"]["subexp"] = sub;
    }
    return j;
}

nlohmann::json inequality_report_to_json(const InequalityReport& rep) {
    nlohmann::json j;
    j["all_hold"] = rep.all_hold;
    j["pytlik_constant"] = rep.pytlik_constant;
    nlohmann::json es = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        es.push_back({{"name", e.name},
                      {"lhs", e.lhs},
                      {"rhs", e.rhs},
                      {"holds", e.holds},
                      {"slack", e.rhs - e.lhs},
                      {"witness", e.witness}});
    }
    j["entries"] = es;
    return j;
}

std::string function_to_csv(const GroupFunction& f) {
    std::ostringstream os;
    for (int i = 0; i < f.model().dim(); ++i) os << "c" << i << ",";
    os << "re,im\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (int d = 0; d < f.model().dim(); ++d) os << f.support()[i][d] << ",";
        os << CsvWriter::format(f.values()[i].real()) << ","
           << CsvWriter::format(f.values()[i].imag()) << "\n";
    }
    return os.str();
}

std::string ball_to_csv(const GroupModel& model, int n) {
    std::ostringstream os;
    for (int i = 0; i < model.dim(); ++i) os << "c" << i << ",";
    os << "word_length\n";
    for (const auto& x : model.ball(n)) {
        for (int d = 0; d < model.dim(); ++d) os << x[d] << ",";
        os << model.word_length(x) << "\n";
    }
    return os.str();
}

GroupModel parse_group(const std::string& spec) {
    if (spec == "Z") return GroupModel::integer_lattice(1);
    if (spec == "Z2") return GroupModel::integer_lattice(2);
    if (spec == "Z3") return GroupModel::integer_lattice(3);
    if (spec == "heis") return GroupModel::heisenberg();
    if (spec.rfind("cyclic:", 0) == 0) return GroupModel::cyclic(std::stoi(spec.substr(7)));
    if (spec.rfind("mesh:", 0) == 0) return GroupModel::mesh_line(std::stod(spec.substr(5)));
    throw std::invalid_argument("unknown group spec: " + spec);
}

namespace {

std::map<std::string, double> parse_kv(const std::string& s) {
    std::map<std::string, double> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("expected key=value in weight spec: " + item);
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return kv;
}

double kv_get(const std::map<std::string, double>& kv, const std::string& key, double dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

}  // namespace

Weight parse_weight(const std::string& spec) {
    if (spec.rfind("poly:", 0) == 0) {
        auto kv = parse_kv(spec.substr(5));
        return Weight::polynomial(kv_get(kv, "K", 1.0), kv_get(kv, "D", 2.0));
    }
    if (spec.rfind("subexp:", 0) == 0) {
        auto kv = parse_kv(spec.substr(7));
        return Weight::sub_exponential(kv_get(kv, "C", 1.0), kv_get(kv, "gamma", 0.5));
    }
    if (spec.rfind("exp:", 0) == 0) {
        auto kv = parse_kv(spec.substr(4));
        return Weight::exponential(kv_get(kv, "C", 1.0));
    }
    if (spec.rfind("prod:", 0) == 0) {
        std::string rest = spec.substr(5);
        auto bar = rest.find('|');
        if (bar == std::string::npos)
            throw std::invalid_argument("prod spec needs two '|'-separated factors");
        return Weight::product(parse_weight(rest.substr(0, bar)),
                               parse_weight(rest.substr(bar + 1)));
    }
    throw std::invalid_argument("unknown weight spec: " + spec);
}

}  // namespace lpalg
