#include "grouplab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace grouplab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

IntegerRep alpha_rep() {
    FiniteGroup z2 = cyclic_group(2);
    std::vector<IMat> mats{imat_identity(2), {{1, 0}, {0, -1}}};
    return IntegerRep(std::move(z2), std::move(mats));
}

IntegerRep beta_rep() {
    FiniteGroup z2 = cyclic_group(2);
    std::vector<IMat> mats{imat_identity(2), {{1, 1}, {0, -1}}};
    return IntegerRep(std::move(z2), std::move(mats));
}

IntegerRep rotation4_rep() {
    FiniteGroup z4 = cyclic_group(4);
    IMat r{{0, -1}, {1, 0}};
    std::vector<IMat> mats{imat_identity(2), r, imat_mul(r, r), imat_mul(imat_mul(r, r), r)};
    return IntegerRep(std::move(z4), std::move(mats));
}

IntegerRep negation_rep() {
    FiniteGroup z2 = cyclic_group(2);
    std::vector<IMat> mats{imat_identity(1), {{-1}}};
    return IntegerRep(std::move(z2), std::move(mats));
}

SemidirectGroup g_alpha() { return SemidirectGroup(2, alpha_rep()); }
SemidirectGroup g_beta() { return SemidirectGroup(2, beta_rep()); }

LieAlgebraData corpus_algebra(const std::string& name) {
    if (name == "so3") return so3_algebra();
    if (name == "su2") return su2_algebra();
    if (name == "su2_2eps") return su2_algebra_neg_half_trace();
    if (name == "u2") return u2_algebra();
    if (name == "r1") return abelian_algebra(1);
    if (name == "r2") return abelian_algebra(2);
    if (name == "r3") return abelian_algebra(3);
    if (name == "so3+r1") return direct_sum(so3_algebra(), abelian_algebra(1));
    if (name == "su2+su2") return direct_sum(su2_algebra(), su2_algebra());
    throw ConfigError("unknown algebra '" + name + "'");
}

GroupPtr corpus_group(const std::string& name) {
    if (name == "T1") return SamplableGroup::torus(1);
    if (name == "T2") return SamplableGroup::torus(2);
    if (name == "G_alpha") return SamplableGroup::semidirect(g_alpha());
    if (name == "G_beta") return SamplableGroup::semidirect(g_beta());
    if (name == "SO3") return SamplableGroup::so3();
    if (name == "SU2") return SamplableGroup::su2();
    throw ConfigError("unknown group '" + name + "'");
}

// ---------------------------------------------------------------------------
// Config plumbing
// ---------------------------------------------------------------------------

std::vector<std::string> list_experiments() {
    return {"approximate",     "isolate",  "mz-probe",        "turing-gap", "myers",
            "h2-table",        "minimal-classes", "example-3-1", "functorial-probe"};
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& ex) {
        throw ConfigError(std::string("config is not valid JSON: ") + ex.what());
    }
    ExperimentConfig cfg;
    if (!j.contains("experiment") || !j["experiment"].is_string())
        throw ConfigError("config needs a string field 'experiment'");
    cfg.experiment = j["experiment"].get<std::string>();
    auto known = list_experiments();
    if (std::find(known.begin(), known.end(), cfg.experiment) == known.end())
        throw ConfigError("unknown experiment '" + cfg.experiment + "'");
    json params = j.value("params", json::object());
    if (j.contains("params") && !j["params"].is_object())
        throw ConfigError("'params' must be an object");
    // experiments may also inline their params at top level
    for (auto& [key, value] : j.items())
        if (key != "experiment" && key != "params" && key != "seed" && key != "output")
            params[key] = value;
    cfg.params_json = params.dump();
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ConfigError("'seed' must be an integer");
        cfg.seed = j["seed"].get<unsigned long long>();
    }
    if (j.contains("output")) {
        if (!j["output"].is_string()) throw ConfigError("'output' must be a string");
        cfg.output_dir = j["output"].get<std::string>();
    }
    return cfg;
}

std::string config_hash(const ExperimentConfig& config) {
    json canon;
    canon["experiment"] = config.experiment;
    canon["params"] = json::parse(config.params_json);
    canon["seed"] = config.seed;
    std::string s = canon.dump();
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

namespace {

json provenance(const ExperimentConfig& cfg) {
    json p;
    p["tool_version"] = grouplab_version();
    p["seed"] = cfg.seed;
    p["config_hash"] = config_hash(cfg);
    p["experiment"] = cfg.experiment;
    return p;
}

std::string csv_provenance(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "# tool_version=" << grouplab_version() << "\n";
    os << "# experiment=" << cfg.experiment << "\n";
    os << "# seed=" << cfg.seed << "\n";
    os << "# config_hash=" << config_hash(cfg) << "\n";
    return os.str();
}

template <class T>
T param_or(const json& params, const std::string& key, const T& fallback) {
    if (!params.contains(key)) return fallback;
    try {
        return params.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError("parameter '" + key + "' has the wrong type");
    }
}

// ---- individual experiments ------------------------------------------------

ExperimentOutcome run_approximate(const ExperimentConfig& cfg, const json& params) {
    std::string gname = param_or<std::string>(params, "group", "T1");
    std::vector<int> ns = param_or<std::vector<int>>(params, "ns", {2, 4, 8, 16, 32});
    double net_mesh = param_or<double>(params, "net_mesh", 0.004);
    GroupPtr g = corpus_group(gname);
    if (g->kind() != SamplableGroup::Kind::Torus && g->kind() != SamplableGroup::Kind::Semidirect)
        throw ConfigError("approximate: group must be a torus or semidirect group");

    auto handles = approximation_sequence(g, ns);
    SampleSet full = sample_of(SubgroupHandle::full(g), net_mesh);
    std::vector<std::pair<long long, SampleSet>> seq;
    for (size_t i = 0; i < handles.size(); ++i)
        seq.push_back({ns[i], sample_of(handles[i], net_mesh)});
    auto rows = converging_sequence_report(seq, full);

    ExperimentOutcome out;
    std::ostringstream os;
    os << csv_provenance(cfg) << convergence_report_csv(rows);
    out.artifacts.push_back({"approximate_" + gname + ".csv", os.str()});
    bool decreasing = true;
    for (size_t i = 1; i < rows.size(); ++i)
        if (rows[i].estimate - rows[i].error_bound >=
            rows[i - 1].estimate - rows[i - 1].error_bound)
            decreasing = false;
    std::ostringstream sum;
    sum << "approximate " << gname << ": " << rows.size() << " grid subgroups, "
        << (decreasing ? "strictly decreasing" : "NOT strictly decreasing");
    out.summary = sum.str();
    return out;
}

ExperimentOutcome run_isolate(const ExperimentConfig& cfg, const json& params) {
    if (!params.contains("algebra")) throw ConfigError("isolate: missing 'algebra'");
    LieAlgebraData l = params["algebra"].is_string()
                           ? corpus_algebra(params["algebra"].get<std::string>())
                           : lie_algebra_from_json(params["algebra"].dump());
    auto v = isolation_verdict(l);
    json j;
    j["_provenance"] = provenance(cfg);
    j["isolated"] = v.isolated;
    j["perfect_identity_component"] = v.perfect_identity_component;
    j["derived_dimension"] = v.derived.dim();
    j["codimension"] = v.codimension;
    ExperimentOutcome out;
    out.artifacts.push_back({"isolate.json", j.dump(2) + "\n"});
    out.summary = std::string("isolate: ") + (v.isolated ? "isolated" : "not isolated");
    return out;
}

ExperimentOutcome run_mz_probe(const ExperimentConfig& cfg, const json& params) {
    std::string ambient_name = param_or<std::string>(params, "ambient", "SO3");
    GroupPtr ambient = corpus_group(ambient_name);
    int n = param_or<int>(params, "subgroup_order", 6);
    double angle = param_or<double>(params, "perturb_angle", 0.3);
    ConjugacySearchOptions opts;
    opts.tol = param_or<double>(params, "tol", 1e-3);
    opts.budget = param_or<long long>(params, "budget", 6000);
    opts.restarts = param_or<int>(params, "restarts", 8);
    opts.seed = static_cast<unsigned>(cfg.seed == 0 ? 1 : cfg.seed);

    if (ambient->kind() != SamplableGroup::Kind::SO3)
        throw ConfigError("mz-probe: only the SO3 ambient is wired in this experiment");
    std::vector<GroupElement> kelems;
    for (const auto& q : cyclic_rotations_z(n)) kelems.push_back(GroupElement::make_rotation(q));
    SubgroupHandle k = SubgroupHandle::explicit_subgroup(ambient, kelems, 0, "C" + std::to_string(n));
    GroupElement g0 =
        GroupElement::make_rotation(quat_exp_axis_angle(angle, 0, 0));  // tilt about x
    SubgroupHandle h = conjugate_subgroup(k, g0);

    auto res = conjugacy_search(h, k, ambient, opts);
    json j;
    j["_provenance"] = provenance(cfg);
    j["subgroup"] = "C" + std::to_string(n);
    j["perturb_angle"] = angle;
    j["baseline"] = res.baseline;
    j["residual"] = res.residual;
    j["error_bound"] = res.error_bound;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    ExperimentOutcome out;
    out.artifacts.push_back({"mz_probe.json", j.dump(2) + "\n"});
    std::ostringstream sum;
    sum << "mz-probe: baseline " << res.baseline << " -> residual " << res.residual
        << (res.converged ? " (converged)" : " (budget exhausted)");
    out.summary = sum.str();
    out.exit_code = 0;
    return out;
}

ExperimentOutcome run_turing_gap(const ExperimentConfig& cfg, const json& params) {
    double mesh = param_or<double>(params, "mesh", 0.05);
    int max_cyclic = param_or<int>(params, "max_cyclic", 60);
    int max_dihedral = param_or<int>(params, "max_dihedral", 30);
    int threads = param_or<int>(params, "threads", 0);
    auto catalog = finite_rotation_group_catalog(max_cyclic, max_dihedral);
    auto rep = turing_gap(mesh, catalog, threads);

    std::ostringstream csv;
    csv << csv_provenance(cfg) << "name,order,estimate,error_bound\n";
    csv.precision(17);
    for (const auto& r : rep.rows)
        csv << r.name << "," << r.order << "," << r.estimate << "," << r.error_bound << "\n";
    json j;
    j["_provenance"] = provenance(cfg);
    j["min_gap"] = rep.min_gap;
    j["argmin"] = rep.argmin;
    j["error_bound"] = rep.error_bound;
    j["net_mesh"] = rep.net_mesh;
    j["net_points"] = rep.net_points;
    j["strictly_positive"] = rep.min_gap - rep.error_bound > 0;

    ExperimentOutcome out;
    out.artifacts.push_back({"turing_gap.csv", csv.str()});
    out.artifacts.push_back({"turing_gap.json", j.dump(2) + "\n"});
    std::ostringstream sum;
    sum << "turing-gap: min " << rep.min_gap << " at " << rep.argmin << " (net mesh "
        << rep.net_mesh << ")";
    out.summary = sum.str();
    if (rep.min_gap - rep.error_bound <= 0) out.exit_code = 1;
    return out;
}

ExperimentOutcome run_myers(const ExperimentConfig& cfg, const json& params) {
    std::string name = param_or<std::string>(params, "algebra", "so3");
    LieAlgebraData l = corpus_algebra(name);
    RicciResult ric = ricci_min(l);
    double delta = myers_bound(l);
    GroupPtr g = name == "su2" || name == "su2_2eps" ? corpus_group("SU2") : corpus_group("SO3");
    CoverageOptions copts;
    copts.oracle_mesh = param_or<double>(params, "oracle_mesh", 0.3);
    copts.seed = cfg.seed == 0 ? 1 : cfg.seed;
    double mesh = param_or<double>(params, "coverage_mesh", 0.05);
    auto cov = exp_coverage_check(g, l, delta, mesh, copts);

    json j;
    j["_provenance"] = provenance(cfg);
    j["algebra"] = name;
    j["ric_min"] = ric.value;
    j["ric_exact_pipeline"] = ric.exact_pipeline;
    j["delta"] = delta;
    j["coverage"] = cov.covered;
    j["coverage_gap"] = cov.gap;
    j["coverage_threshold"] = cov.threshold;
    ExperimentOutcome out;
    out.artifacts.push_back({"myers_" + name + ".json", j.dump(2) + "\n"});
    std::ostringstream sum;
    sum << "myers " << name << ": ric_min " << ric.value << ", delta " << delta << ", coverage "
        << (cov.covered ? "true" : "false");
    out.summary = sum.str();
    if (!cov.covered) out.exit_code = 1;
    return out;
}

FiniteGroup group_by_name(const std::string& name) {
    if (name == "Z2") return cyclic_group(2);
    if (name == "Z3") return cyclic_group(3);
    if (name == "Z4") return cyclic_group(4);
    if (name == "Z5") return cyclic_group(5);
    if (name == "Z6") return cyclic_group(6);
    if (name == "Z2xZ2") return direct_product(cyclic_group(2), cyclic_group(2));
    if (name == "S3") return symmetric3();
    throw ConfigError("unknown finite group '" + name + "'");
}

ExperimentOutcome run_h2_table(const ExperimentConfig& cfg, const json& params) {
    json cases = params.value("cases", json::array());
    if (cases.empty()) {
        for (const char* f : {"Z2", "Z3", "Z4", "Z2xZ2"})
            for (int k : {2, 3, 4, 5})
                cases.push_back(json{{"F", f}, {"M", json::array({k})}});
    }
    std::ostringstream csv;
    csv << csv_provenance(cfg) << "F,M,h2_invariant_factors\n";
    for (const auto& c : cases) {
        std::string fname = c.at("F").get<std::string>();
        FiniteGroup f = group_by_name(fname);
        std::vector<long long> factors = c.at("M").get<std::vector<long long>>();
        FiniteModule m = FiniteModule::trivial(f, factors);
        auto inv = h2(m);
        csv << fname << ",";
        for (size_t i = 0; i < factors.size(); ++i) csv << (i ? "x" : "") << factors[i];
        csv << ",";
        if (inv.empty())
            csv << "trivial";
        else
            for (size_t i = 0; i < inv.size(); ++i) csv << (i ? "x" : "") << inv[i];
        csv << "\n";
    }
    ExperimentOutcome out;
    out.artifacts.push_back({"h2_table.csv", csv.str()});
    out.summary = "h2-table: " + std::to_string(cases.size()) + " cases";
    return out;
}

ExperimentOutcome run_minimal_classes(const ExperimentConfig& cfg, const json&) {
    json j;
    j["_provenance"] = provenance(cfg);
    json arr = json::array();
    auto describe = [&](const std::string& name, const IntegerRep& rep) {
        auto r = minimality_check(rep);
        json e = json::parse(minimality_report_to_json(r));
        e["name"] = name;
        arr.push_back(e);
    };
    describe("Z4_rotation", rotation4_rep());
    describe("Z2_negation", negation_rep());
    describe("alpha", alpha_rep());
    describe("beta", beta_rep());
    j["reports"] = arr;
    ExperimentOutcome out;
    out.artifacts.push_back({"minimal_classes.json", j.dump(2) + "\n"});
    out.summary = "minimal-classes: 4 representations checked";
    return out;
}

ExperimentOutcome run_example_3_1(const ExperimentConfig& cfg, const json&) {
    json j;
    j["_provenance"] = provenance(cfg);

    // quotient of the alpha group by Z^2 + Z(1/2,1/2) gives beta
    QMat gen1(2, QVec(1, Rat(0)));
    gen1[0][0] = Rat(1, 2);
    gen1[1][0] = Rat(1, 2);
    auto lat1 = RationalLattice::from_generators(2, gen1);
    auto induced1 = invariant_lattice_quotient(alpha_rep(), lat1);
    bool alpha_to_beta = imat_eq(induced1.matrices[1], beta_rep().matrices[1]);
    j["alpha_lattice_induces_beta"] = alpha_to_beta;

    // quotient of the beta group by (1/2)Z + Z gives a matrix conjugate to alpha
    QMat gen2(2, QVec(1, Rat(0)));
    gen2[0][0] = Rat(1, 2);
    gen2[1][0] = Rat(0);
    auto lat2 = RationalLattice::from_generators(2, gen2);
    auto induced2 = invariant_lattice_quotient(beta_rep(), lat2);
    j["beta_lattice_induced_matrix"] = {{induced2.matrices[1][0][0], induced2.matrices[1][0][1]},
                                        {induced2.matrices[1][1][0], induced2.matrices[1][1][1]}};
    IMat p{{1, 1}, {0, 1}};
    IMat lhs = imat_mul(p, induced2.matrices[1]);
    IMat rhs = imat_mul(alpha_rep().matrices[1], p);
    bool conjugate_via_p = imat_eq(lhs, rhs);
    j["beta_lattice_conjugate_to_alpha_via_P"] = conjugate_via_p;
    auto found = glz_conjugate(induced2, alpha_rep());
    j["beta_lattice_conjugacy_found"] = found.has_value();

    auto ca = center_components(g_alpha());
    auto cb = center_components(g_beta());
    j["center_alpha"] = {{"dimension", ca.first}, {"components", ca.second}};
    j["center_beta"] = {{"dimension", cb.first}, {"components", cb.second}};
    bool centers_ok = ca.first == 1 && ca.second == 2 && cb.first == 1 && cb.second == 1;
    bool all = alpha_to_beta && conjugate_via_p && found.has_value() && centers_ok;
    j["all_claims_verified"] = all;

    ExperimentOutcome out;
    out.artifacts.push_back({"example_3_1.json", j.dump(2) + "\n"});
    out.summary = std::string("example-3-1: ") + (all ? "all claims verified" : "MISMATCH");
    if (!all) out.exit_code = 1;
    return out;
}

ExperimentOutcome run_functorial_probe(const ExperimentConfig& cfg, const json& params) {
    std::string which = param_or<std::string>(params, "hom", "T2_to_T1");
    double mesh = param_or<double>(params, "target_mesh", 0.05);
    ExperimentOutcome out;
    json j;
    j["_provenance"] = provenance(cfg);
    j["hom"] = which;

    if (which == "T2_to_T1") {
        GroupHom f = GroupHom::torus_projection(2, {0});
        auto domain = f.domain();
        SubgroupHandle k = SubgroupHandle::cyclic_grid(domain, 2);
        auto ks = sample_of(k, mesh);
        VietorisNbhd nbhd;
        for (const auto& p : ks.points) nbhd.u0.balls.push_back({p, 0.45});
        Region r1;
        r1.balls.push_back({domain->identity(), 0.3});
        nbhd.meets.push_back(r1);
        std::vector<std::pair<std::string, SubgroupHandle>> battery;
        battery.push_back({"C2", SubgroupHandle::cyclic_grid(f.codomain(), 2)});
        battery.push_back({"C4", SubgroupHandle::cyclic_grid(f.codomain(), 4)});
        battery.push_back({"image", pushforward(f, k, mesh)});
        auto rep = openness_probe(f, k, nbhd, battery, mesh);
        j["probe"] = json::parse(probe_report_to_json(rep));
        auto rt = roundtrip_defect(f, SubgroupHandle::cyclic_grid(f.codomain(), 2), mesh);
        j["roundtrip_estimate"] = rt.estimate;
        j["roundtrip_error_bound"] = rt.error_bound;
        out.exit_code = rep.all_pass ? 0 : 1;
        out.summary = std::string("functorial-probe T2->T1: ") +
                      (rep.all_pass ? "all candidates pass" : "FAILURES");
    } else if (which == "SU2_to_SO3") {
        GroupHom f = GroupHom::su2_to_so3();
        auto domain = f.domain();
        std::vector<GroupElement> lift;
        for (const auto& q : binary_lift(cyclic_rotations_z(3)))
            lift.push_back(GroupElement::make_unitary(q));
        SubgroupHandle k = SubgroupHandle::explicit_subgroup(domain, lift, 0, "binC3");
        auto ks = sample_of(k, mesh);
        VietorisNbhd nbhd;
        for (const auto& p : ks.points) nbhd.u0.balls.push_back({p, 0.6});
        Region r1;
        r1.balls.push_back({domain->identity(), 0.4});
        nbhd.meets.push_back(r1);
        std::vector<std::pair<std::string, SubgroupHandle>> battery;
        std::vector<GroupElement> c3;
        for (const auto& q : cyclic_rotations_z(3)) c3.push_back(GroupElement::make_rotation(q));
        battery.push_back({"C3", SubgroupHandle::explicit_subgroup(f.codomain(), c3, 0, "C3")});
        GroupElement tilt = GroupElement::make_rotation(quat_exp_axis_angle(0.05, 0, 0));
        battery.push_back(
            {"C3_tilted", conjugate_subgroup(battery.back().second, tilt)});
        battery.push_back({"image", pushforward(f, k, mesh)});
        auto rep = openness_probe(f, k, nbhd, battery, mesh);
        j["probe"] = json::parse(probe_report_to_json(rep));
        auto rt = roundtrip_defect(f, battery[0].second, mesh);
        j["roundtrip_estimate"] = rt.estimate;
        j["roundtrip_error_bound"] = rt.error_bound;
        out.exit_code = rep.all_pass ? 0 : 1;
        out.summary = std::string("functorial-probe SU2->SO3: ") +
                      (rep.all_pass ? "all candidates pass" : "FAILURES");
    } else {
        throw ConfigError("functorial-probe: unknown hom '" + which + "'");
    }
    out.artifacts.push_back({"functorial_probe.json", j.dump(2) + "\n"});
    return out;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    json params = json::parse(cfg.params_json);
    if (cfg.experiment == "approximate") return run_approximate(cfg, params);
    if (cfg.experiment == "isolate") return run_isolate(cfg, params);
    if (cfg.experiment == "mz-probe") return run_mz_probe(cfg, params);
    if (cfg.experiment == "turing-gap") return run_turing_gap(cfg, params);
    if (cfg.experiment == "myers") return run_myers(cfg, params);
    if (cfg.experiment == "h2-table") return run_h2_table(cfg, params);
    if (cfg.experiment == "minimal-classes") return run_minimal_classes(cfg, params);
    if (cfg.experiment == "example-3-1") return run_example_3_1(cfg, params);
    if (cfg.experiment == "functorial-probe") return run_functorial_probe(cfg, params);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

}  // namespace grouplab
