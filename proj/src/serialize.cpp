#include "sfe/serialize.hpp"

#include <fstream>
#include <set>

namespace sfe {

namespace {

Json complex_to_json(const Complexd& c) { return Json::array({c.real(), c.imag()}); }

Complexd complex_from_json(const Json& j) {
    require(j.is_array() && j.size() == 2, "complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (long i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    require(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
    const long rows = static_cast<long>(j.size());
    const long cols = static_cast<long>(j[0].size());
    Matrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        require(static_cast<long>(j[i].size()) == cols, "ragged matrix rows");
        for (long k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

std::vector<std::string> labels_from_json(const Json& j, const char* what) {
    require(j.is_array(), std::string(what) + " must be an array of labels");
    std::vector<std::string> out;
    for (const auto& l : j) out.push_back(l.get<std::string>());
    return out;
}

} // namespace

Json to_json(const RegisterLayout& layout) {
    Json regs = Json::array();
    for (const auto& r : layout.registers())
        regs.push_back(Json{{"label", r.label}, {"dim", r.dim}});
    return regs;
}

RegisterLayout layout_from_json(const Json& j) {
    require(j.is_array(), "layout must be an array of registers");
    std::vector<Register> regs;
    for (const auto& r : j) regs.push_back({r.at("label").get<std::string>(),
                                            r.at("dim").get<long>()});
    return RegisterLayout(std::move(regs));
}

Json to_json(const PureState& psi) {
    Json amp = Json::array();
    for (long i = 0; i < psi.amp.size(); ++i) amp.push_back(complex_to_json(psi.amp[i]));
    return Json{{"layout", to_json(psi.layout)}, {"amp", std::move(amp)}};
}

PureState pure_state_from_json(const Json& j) {
    auto layout = layout_from_json(j.at("layout"));
    const auto& amp_json = j.at("amp");
    Vector amp(amp_json.size());
    for (std::size_t i = 0; i < amp_json.size(); ++i) amp[i] = complex_from_json(amp_json[i]);
    return PureState(std::move(layout), std::move(amp));
}

Json to_json(const DensityOperator& rho) {
    return Json{{"layout", to_json(rho.layout)}, {"mat", matrix_to_json(rho.mat)}};
}

DensityOperator density_from_json(const Json& j) {
    auto layout = layout_from_json(j.at("layout"));
    auto rho = DensityOperator(std::move(layout), matrix_from_json(j.at("mat")));
    rho.validate_full();
    return rho;
}

Json to_json(const FunctionTable& f) {
    return Json{{"x", f.x_labels}, {"y", f.y_labels}, {"z", f.z_labels}, {"t", f.table}};
}

FunctionTable function_from_json(const Json& j) {
    FunctionTable f;
    f.x_labels = labels_from_json(j.at("x"), "x");
    f.y_labels = labels_from_json(j.at("y"), "y");
    f.z_labels = labels_from_json(j.at("z"), "z");
    for (const auto& row : j.at("t")) f.table.push_back(row.get<std::vector<int>>());
    f.validate();
    return f;
}

Json to_json(const JointDistribution& p) {
    auto table = p.dense();
    Json rows = Json::array();
    for (long u = 0; u < table.rows(); ++u) {
        Json row = Json::array();
        for (long v = 0; v < table.cols(); ++v) row.push_back(table(u, v));
        rows.push_back(std::move(row));
    }
    return Json{{"u", p.u_labels}, {"v", p.v_labels}, {"p", std::move(rows)}};
}

JointDistribution joint_from_json(const Json& j) {
    auto u = labels_from_json(j.at("u"), "u");
    auto v = labels_from_json(j.at("v"), "v");
    const auto& rows = j.at("p");
    require(rows.size() == u.size(), "probability table row count does not match |U|");
    Eigen::MatrixXd table(u.size(), v.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        require(rows[r].size() == v.size(), "probability table column count does not match |V|");
        for (std::size_t c = 0; c < v.size(); ++c) table(r, c) = rows[r][c].get<double>();
    }
    return JointDistribution::from_dense(std::move(u), std::move(v), table);
}

Json to_json(const ProtocolInstance& p) {
    Json layout = Json::array();
    std::set<std::string> alice(p.alice_registers.begin(), p.alice_registers.end());
    std::set<std::string> bob(p.bob_registers.begin(), p.bob_registers.end());
    for (const auto& r : p.layout.registers()) {
        std::string side = alice.count(r.label) ? "alice"
                           : bob.count(r.label) ? "bob"
                                                : "env";
        layout.push_back(Json{{"label", r.label}, {"dim", r.dim}, {"side", side}});
    }
    Json branches = Json::object();
    for (long x = 0; x < p.f.x_size(); ++x)
        for (long y = 0; y < p.f.y_size(); ++y) {
            Json fam = Json::array();
            for (const auto& b : p.branches[x][y]) {
                Json amp = Json::array();
                for (long i = 0; i < b.state.amp.size(); ++i)
                    amp.push_back(complex_to_json(b.state.amp[i]));
                fam.push_back(Json{{"t", b.transcript}, {"p", b.prob}, {"amp", std::move(amp)}});
            }
            branches[p.f.x_labels[x] + "|" + p.f.y_labels[y]] = std::move(fam);
        }
    Json targets = Json::object();
    Json measurements = Json::object();
    for (long y = 0; y < p.f.y_size(); ++y) {
        if (!p.honest[y]) continue;
        targets[p.f.y_labels[y]] = p.honest[y]->targets;
        Json outcomes = Json::array();
        for (const auto& o : p.honest[y]->outcomes)
            outcomes.push_back(Json{{"z", o.label}, {"kraus", matrix_to_json(o.kraus)}});
        measurements[p.f.y_labels[y]] = std::move(outcomes);
    }
    return Json{{"function", to_json(p.f)},
                {"layout", std::move(layout)},
                {"branches", std::move(branches)},
                {"measurement_targets", std::move(targets)},
                {"measurements", std::move(measurements)}};
}

ProtocolInstance protocol_from_json(const Json& j) {
    ProtocolInstance p;
    const auto& fj = j.at("function");
    p.f = fj.is_string() ? builtin_function(fj.get<std::string>()) : function_from_json(fj);

    std::vector<Register> regs;
    for (const auto& r : j.at("layout")) {
        Register reg{r.at("label").get<std::string>(), r.at("dim").get<long>()};
        std::string side = r.value("side", "env");
        if (side == "alice")
            p.alice_registers.push_back(reg.label);
        else if (side == "bob")
            p.bob_registers.push_back(reg.label);
        else
            require(side == "env", "register side must be alice, bob, or env");
        regs.push_back(std::move(reg));
    }
    p.layout = RegisterLayout(std::move(regs));

    p.branches.assign(p.f.x_size(), std::vector<std::vector<Branch>>(p.f.y_size()));
    for (const auto& [key, fam] : j.at("branches").items()) {
        auto sep = key.find('|');
        require(sep != std::string::npos, "branch key must be \"x|y\": " + key);
        const int x = p.f.x_index(key.substr(0, sep));
        const int y = p.f.y_index(key.substr(sep + 1));
        for (const auto& b : fam) {
            const auto& amp_json = b.at("amp");
            Vector amp(amp_json.size());
            for (std::size_t i = 0; i < amp_json.size(); ++i)
                amp[i] = complex_from_json(amp_json[i]);
            p.branches[x][y].push_back({b.at("t").get<std::string>(), b.at("p").get<double>(),
                                        PureState(p.layout, std::move(amp))});
        }
    }

    p.honest.assign(p.f.y_size(), std::nullopt);
    if (j.contains("measurements")) {
        const auto& targets = j.at("measurement_targets");
        for (const auto& [ylabel, outcomes] : j.at("measurements").items()) {
            const int y = p.f.y_index(ylabel);
            Measurement m;
            m.targets = labels_from_json(targets.at(ylabel), "measurement_targets");
            for (const auto& o : outcomes)
                m.outcomes.push_back(
                    {o.at("z").get<std::string>(), matrix_from_json(o.at("kraus"))});
            p.honest[y] = std::move(m);
        }
    }
    p.validate();
    return p;
}

Json to_json(const BoundReport& r) {
    Json inputs = Json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    return Json{{"bound", r.bound_name}, {"inputs", std::move(inputs)}, {"lhs", r.lhs},
                {"rhs", r.rhs},          {"slack", r.slack},           {"feasible", r.feasible},
                {"notes", r.notes}};
}

Json to_json(const AttackResult& r) {
    return Json{{"order", r.order},
                {"per_step_fail", r.per_step_fail},
                {"joint_success", r.joint_success},
                {"extracted_x_accuracy", r.extracted_x_accuracy},
                {"rotation_overlaps", r.rotation_overlaps}};
}

Json to_json(const Thm2Experiment& e) {
    return Json{{"h_x_given_b", e.h_x_given_b},
                {"h_x_given_bb", e.h_x_given_bb},
                {"gap", e.gap},
                {"entropy_sum", e.entropy_sum},
                {"concealment_t", e.concealment},
                {"eps", e.eps},
                {"thm2_rhs", e.thm2_rhs},
                {"chain_ok", e.chain_ok},
                {"thm2_ok", e.thm2_ok}};
}

Json to_json(const InequalityReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"name", c.name},
                              {"trials", c.trials},
                              {"worst_slack", c.worst_slack},
                              {"violations", c.violations}});
    return Json{{"checks", std::move(checks)}, {"all_ok", r.all_ok()}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    require(out.good(), "cannot open file for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace sfe
