#include "perc/plan.hpp"

#include <sstream>
#include <stdexcept>

namespace perc {

const char* experiment_type_name(ExperimentType type) {
    switch (type) {
        case ExperimentType::MinHeight: return "min-height";
        case ExperimentType::BlockMoments: return "block-moments";
        case ExperimentType::StripDensity: return "strip-density";
        case ExperimentType::SizeMoments: return "size-moments";
        case ExperimentType::Stationarity: return "stationarity";
        case ExperimentType::Horseshoe: return "horseshoe";
        case ExperimentType::SectorPair: return "sector-pair";
    }
    return "unknown";
}

ExperimentType experiment_type_from_name(const std::string& name) {
    for (ExperimentType t :
         {ExperimentType::MinHeight, ExperimentType::BlockMoments, ExperimentType::StripDensity,
          ExperimentType::SizeMoments, ExperimentType::Stationarity, ExperimentType::Horseshoe,
          ExperimentType::SectorPair})
        if (name == experiment_type_name(t)) return t;
    throw std::invalid_argument("unknown experiment type: " + name);
}

namespace {

std::vector<int> parse_int_list(std::istringstream& is) {
    std::vector<int> out;
    int v;
    while (is >> v) out.push_back(v);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text, std::vector<std::string>* warnings) {
    ExperimentPlan plan;
    plan.experiments.clear();
    std::istringstream lines(text);
    std::string line;
    enum class Section { None, Plan, Experiment } section = Section::None;
    int lineno = 0;
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(lines, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[plan]") {
            section = Section::Plan;
            continue;
        }
        if (line == "[experiment]") {
            section = Section::Experiment;
            plan.experiments.emplace_back();
            continue;
        }
        if (line.front() == '[')
            throw std::invalid_argument("plan line " + std::to_string(lineno) +
                                        ": unknown section " + line);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("plan line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::istringstream value(trim(line.substr(eq + 1)));
        if (section == Section::Plan) {
            if (key == "id") value >> plan.id;
            else if (key == "lattice") {
                std::string kind;
                value >> kind;
                if (kind == "triangular") plan.lattice = LatticeKind::Triangular;
                else if (kind == "square-site") plan.lattice = LatticeKind::SquareSite;
                else throw std::invalid_argument("plan: unknown lattice " + kind);
            } else if (key == "master_seed") value >> plan.master_seed;
            else if (key == "workers") value >> plan.workers;
            else if (key == "p") value >> plan.p_override;
            else if (key == "output") value >> plan.output_dir;
            else warn("unknown plan key '" + key + "' ignored");
        } else if (section == Section::Experiment) {
            auto& exp = plan.experiments.back();
            if (key == "type") {
                std::string name;
                value >> name;
                exp.type = experiment_type_from_name(name);
            } else if (key == "n") exp.n_values = parse_int_list(value);
            else if (key == "m") exp.m_values = parse_int_list(value);
            else if (key == "rho") value >> exp.rho;
            else if (key == "nu") exp.nu_values = parse_int_list(value);
            else if (key == "l") value >> exp.l;
            else if (key == "trials") value >> exp.trials;
            else warn("unknown experiment key '" + key + "' ignored");
        } else {
            throw std::invalid_argument("plan line " + std::to_string(lineno) +
                                        ": key outside a section");
        }
    }
    return plan;
}

std::string serialize_plan(const ExperimentPlan& plan) {
    std::ostringstream os;
    os << "[plan]\n";
    os << "id = " << plan.id << "\n";
    os << "lattice = "
       << (plan.lattice == LatticeKind::Triangular ? "triangular" : "square-site") << "\n";
    os << "master_seed = " << plan.master_seed << "\n";
    os << "workers = " << plan.workers << "\n";
    if (plan.p_override >= 0.0) {
        os.precision(17);
        os << "p = " << plan.p_override << "\n";
    }
    os << "output = " << plan.output_dir << "\n";
    for (const auto& exp : plan.experiments) {
        os << "[experiment]\n";
        os << "type = " << experiment_type_name(exp.type) << "\n";
        auto list = [&os](const char* key, const std::vector<int>& values) {
            if (values.empty()) return;
            os << key << " =";
            for (int v : values) os << " " << v;
            os << "\n";
        };
        list("n", exp.n_values);
        list("m", exp.m_values);
        if (exp.type == ExperimentType::Horseshoe) {
            os << "rho = " << exp.rho << "\n";
            list("nu", exp.nu_values);
        }
        if (exp.type == ExperimentType::SectorPair) os << "l = " << exp.l << "\n";
        os << "trials = " << exp.trials << "\n";
    }
    return os.str();
}

void validate_plan(const ExperimentPlan& plan) {
    if (plan.experiments.empty()) throw std::invalid_argument("plan: no experiments");
    if (plan.workers < 0) throw std::invalid_argument("plan: workers must be >= 0");
    for (size_t e = 0; e < plan.experiments.size(); ++e) {
        const auto& exp = plan.experiments[e];
        const std::string where = "experiment " + std::to_string(e) + " (" +
                                  experiment_type_name(exp.type) + ")";
        if (exp.trials < 1) throw std::invalid_argument(where + ": trials must be >= 1");
        const bool uses_n = exp.type != ExperimentType::Horseshoe;
        if (uses_n) {
            if (exp.n_values.empty()) throw std::invalid_argument(where + ": empty n grid");
            for (int n : exp.n_values)
                if (n < 1) throw std::invalid_argument(where + ": n must be positive");
        }
        if (exp.type == ExperimentType::BlockMoments || exp.type == ExperimentType::StripDensity ||
            exp.type == ExperimentType::MinHeight) {
            if (exp.m_values.empty() && exp.type != ExperimentType::MinHeight)
                throw std::invalid_argument(where + ": empty m grid");
            for (int n : exp.n_values)
                for (int m : exp.m_values) {
                    if (m < 1) throw std::invalid_argument(where + ": m must be positive");
                    const int limit = exp.type == ExperimentType::StripDensity ? 2 * n : n;
                    if (m > limit)
                        throw std::invalid_argument(where + ": cell n=" + std::to_string(n) +
                                                    " m=" + std::to_string(m) + ": m out of range");
                }
        }
        if (exp.type == ExperimentType::Horseshoe) {
            if (exp.nu_values.empty()) throw std::invalid_argument(where + ": empty nu grid");
            if (exp.rho < 0) throw std::invalid_argument(where + ": rho must be >= 0");
            for (int nu : exp.nu_values)
                if (nu < exp.rho)
                    throw std::invalid_argument(where + ": cell nu=" + std::to_string(nu) +
                                                ": rho > nu");
        }
        if (exp.type == ExperimentType::SectorPair) {
            if (exp.l < 1) throw std::invalid_argument(where + ": l must be >= 1");
            for (int n : exp.n_values)
                if (2 * exp.l > n)
                    throw std::invalid_argument(where + ": cell n=" + std::to_string(n) +
                                                ": l > n/2");
        }
    }
}

uint64_t plan_digest(const ExperimentPlan& plan) {
    // FNV-1a over the canonical serialization, with the fields that cannot
    // affect results (worker count, output location) normalized away.
    ExperimentPlan canon = plan;
    canon.workers = 0;
    canon.output_dir = "";
    const std::string text = serialize_plan(canon);
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace perc
