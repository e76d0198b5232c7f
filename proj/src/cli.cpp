#include "grouplab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplab/error.hpp"
#include "grouplab/extensions.hpp"
#include "grouplab/links.hpp"
#include "grouplab/magnus.hpp"
#include "grouplab/nilpotent.hpp"
#include "grouplab/pc_json.hpp"
#include "grouplab/pgroups.hpp"
#include "grouplab/ssq.hpp"
#include "grouplab/words.hpp"

namespace grouplab::cli {

namespace {

using json = nlohmann::ordered_json;
using nilpotent::AbelianInvariants;
using nilpotent::ExponentVector;
using nilpotent::IntMatrix;

struct Settings {
    bool json_output = false;
    int class_cap = nilpotent::kDefaultClassCap;
    std::size_t generator_cap = nilpotent::kDefaultGeneratorCap;
    int weight_cap = magnus::kDefaultWeightCap;
    std::size_t search_bound = extensions::TorsionSearchConfig{}.branch_cap;

    nilpotent::NqConfig nq() const { return {class_cap, generator_cap}; }
    json to_json() const {
        return {{"class_cap", class_cap}, {"generator_cap", generator_cap}, {"weight_cap", weight_cap}, {"search_bound", search_bound}};
    }
};

struct Report {
    std::string verdict = "pass";
    json inputs = json::object();
    json result = json::object();
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::json read_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string verdict_string(Verdict v) { return to_string(v); }

json names(const magnus::LyndonWord& w, const std::vector<std::string>& gens) {
    json j = json::array();
    for (std::size_t g : w) j.push_back(gens.at(g));
    return j;
}

json lie_json(const magnus::LieElement& e, const std::vector<std::string>& gens) {
    json j = json::array();
    for (const auto& [w, c] : e.coeffs) j.push_back({{"word", names(w, gens)}, {"coefficient", c}});
    return j;
}

json invariants_json(const AbelianInvariants& a) { return {{"rank", a.rank}, {"torsion", a.torsion}}; }

Report cmd_parse(const std::string& file) {
    Report r;
    const auto parsed = words::parse_presentation_with_diagnostics(read_file(file));
    r.inputs["file"] = file;
    r.result["generators"] = parsed.presentation.generators;
    r.result["relators"] = parsed.presentation.relators.size();
    r.result["presentation"] = words::render(parsed.presentation);
    r.result["warnings"] = parsed.warnings;
    return r;
}

Report cmd_weight(const std::string& file, const std::string& word, const Settings& s) {
    Report r;
    const auto p = words::parse_presentation(read_file(file));
    const auto w = words::parse_word(word, p.generators);
    r.inputs = {{"file", file}, {"word", words::render(w, p.generators)}};
    const auto weight = magnus::lcs_weight(w, p.rank(), s.weight_cap);
    r.result["weight"] = weight ? json(*weight) : json("infinite");
    if (weight) r.result["lie_image"] = lie_json(magnus::lie_image(w, p.rank(), s.weight_cap), p.generators);
    return r;
}

Report cmd_primitive_relator(const std::string& file, bool strict_lcm, const Settings& s) {
    Report r;
    const auto p = words::parse_presentation(read_file(file));
    r.inputs = {{"file", file}, {"presentation", words::render(p)}};
    const auto cert = magnus::is_primitive_relator(p, s.weight_cap);
    r.result["primitive"] = cert.verdict;
    r.result["weight"] = cert.weight ? json(*cert.weight) : json("infinite");
    if (cert.weight) {
        r.result["lie_image"] = lie_json(cert.lie_image, p.generators);
        r.result["coefficient_gcd"] = cert.coefficient_gcd;
    }
    if (p.relators.size() == 1) r.result["exponent_sum_criterion"] = magnus::exponent_sum_criterion(p, strict_lcm);
    r.verdict = cert.verdict ? "pass" : "fail";
    return r;
}

Report cmd_nq(const std::string& file, int c, const Settings& s) {
    Report r;
    const auto p = words::parse_presentation(read_file(file));
    r.inputs = {{"file", file}, {"class", c}};
    const auto q = nilpotent::nq(p, c, s.nq());
    r.result["pc"] = pc_to_json(q.quotient);
    json layers = json::array();
    for (const auto& l : q.layer_invariants) layers.push_back(invariants_json(l));
    r.result["layer_invariants"] = layers;
    json images = json::object();
    for (std::size_t g = 0; g < p.rank(); ++g) images[p.generators[g]] = q.gen_map[g];
    r.result["generator_images"] = images;
    const auto torsion = nilpotent::torsion_subgroup(q.quotient);
    r.result["torsion_order"] = torsion.order();
    return r;
}

Report cmd_torsion_probe(const std::string& file, int c_max, const Settings& s) {
    Report r;
    const auto p = words::parse_presentation(read_file(file));
    r.inputs = {{"file", file}, {"class_max", c_max}};
    json entries = json::array();
    bool all = true;
    for (const auto& e : nilpotent::enough_tf_probe(p, c_max, s.nq())) {
        json layers = json::array();
        for (const auto& l : e.layer_invariants) layers.push_back(invariants_json(l));
        entries.push_back({{"class", e.nilpotency_class}, {"torsion_free", e.torsion_free}, {"torsion_order", e.torsion_order}, {"layer_invariants", layers}});
        all = all && e.torsion_free;
    }
    r.result["entries"] = entries;
    r.verdict = all ? "pass" : "fail";
    return r;
}

Report cmd_plcs(const std::string& file) {
    Report r;
    const auto g = pgroups::load_p_group(read_json_file(file), file);
    r.inputs = {{"file", file}, {"prime", g.prime()}, {"order", g.group().order()}};
    const auto series = pgroups::p_lower_central_series(g);
    json terms = json::array();
    for (std::size_t i = 0; i < series.subgroups.size(); ++i)
        terms.push_back({{"order", series.subgroups[i].size()}, {"generators", series.generators[i]}});
    r.result["series"] = terms;
    r.result["p_length"] = series.length;
    return r;
}

pgroups::ModuleAction read_module(const nlohmann::json& j) {
    pgroups::ModuleAction m;
    try {
        m.prime = j.value("prime", Int{0});
        m.generators = j.at("generators").get<std::vector<IntMatrix>>();
        m.dimension = j.contains("dimension") ? j.at("dimension").get<std::size_t>() : (m.generators.empty() ? 0 : m.generators[0].size());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("module JSON needs \"generators\" (matrices) and optional \"prime\": ") + e.what());
    }
    return m;
}

Report cmd_unipotent(const std::string& file, const std::vector<Int>& transfer) {
    Report r;
    const auto m = read_module(read_json_file(file));
    r.inputs = {{"file", file}, {"prime", m.prime}, {"dimension", m.dimension}, {"generators", m.generators.size()}};
    const auto u = pgroups::is_unipotent_action(m);
    r.result["unipotent"] = u.unipotent;
    r.result["m"] = u.m ? json(*u.m) : json(nullptr);
    r.result["chain"] = u.chain;
    bool ok = u.unipotent;
    if (!transfer.empty()) {
        r.inputs["transfer_primes"] = transfer;
        const auto t = pgroups::unipotent_mod_p_transfer(m, transfer);
        json red = json::array();
        for (const auto& x : t.reductions)
            red.push_back({{"prime", x.prime}, {"unipotent", x.unipotent}, {"m", x.m ? json(*x.m) : json(nullptr)}, {"pass", x.pass}});
        r.result["transfer"] = {{"reductions", red}, {"pass", t.pass}};
        ok = ok && t.pass;
    }
    r.verdict = ok ? "pass" : "fail";
    return r;
}

Report cmd_power_lemma_matrix(const std::string& file) {
    Report r;
    const auto j = read_json_file(file);
    pgroups::FpMatrix a;
    try {
        a.prime = j.at("prime").get<Int>();
        a.entries = j.at("matrix").get<IntMatrix>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("matrix JSON needs \"prime\" and \"matrix\": ") + e.what());
    }
    r.inputs = {{"file", file}, {"prime", a.prime}, {"size", a.size()}};
    const auto rec = pgroups::check_power_lemma_matrix(a);
    r.result = {{"unipotent", rec.unipotent}, {"n", rec.n}, {"k", rec.k}, {"p_power", rec.p_power}, {"pass", rec.pass}};
    r.verdict = !rec.unipotent ? "inapplicable" : rec.pass ? "pass" : "fail";
    return r;
}

Report cmd_power_lemma_group(const std::string& file, const std::string& images) {
    Report r;
    const auto g = pgroups::load_p_group(read_json_file(file), file);
    r.inputs = {{"file", file}, {"prime", g.prime()}, {"order", g.group().order()}};
    if (!images.empty()) {
        pgroups::Automorphism alpha;
        try {
            for (const auto& e : nlohmann::json::parse(images)) alpha.push_back(g.element(e.get<ExponentVector>()));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("--images must be a JSON list of exponent vectors: ") + e.what());
        }
        r.inputs["images"] = nlohmann::json::parse(images);
        const auto rec = pgroups::check_power_lemma_automorphism(g, alpha);
        r.result = rec.to_json();
        r.verdict = verdict_string(rec.verdict);
        return r;
    }
    std::size_t count = 0, failures = 0;
    for (const auto& alpha : pgroups::automorphisms(g, true)) {
        ++count;
        failures += pgroups::check_power_lemma_automorphism(g, alpha).verdict != Verdict::pass;
    }
    r.result = {{"automorphisms_checked", count}, {"failures", failures}, {"p_length", pgroups::nilpotent_p_length(g)}};
    r.verdict = failures == 0 ? "pass" : "fail";
    return r;
}

Report cmd_tau_check(const std::string& fixture, int m_max) {
    Report r;
    if (m_max < 0 || m_max > 6) throw InputError("--m must lie in [0, 6]");
    std::vector<std::string> names = fixture == "all" ? extensions::split_fixture_names() : std::vector<std::string>{fixture};
    r.inputs = {{"fixture", fixture}, {"m_max", m_max}};
    json records = json::array();
    bool failed = false;
    for (const auto& name : names) {
        const auto s = extensions::split_fixture(name);
        std::vector<VerificationRecord> recs{extensions::tau_equation_check(s)};
        for (int m = 0; m <= m_max; ++m) recs.push_back(extensions::falk_randell_inclusion_check(s, m));
        for (int m = 0; m <= m_max; ++m) recs.push_back(extensions::hall_inclusion_check(s.group(), s.kernel_subgroup(), m, name));
        for (const auto& x : recs) {
            failed = failed || x.verdict == Verdict::fail;
            records.push_back(x.to_json());
        }
    }
    r.result["records"] = records;
    r.verdict = failed ? "fail" : "pass";
    return r;
}

Report cmd_braid_quotient(std::size_t n, int big_n, const Settings& s) {
    Report r;
    r.inputs = {{"strands", n}, {"N", big_n}};
    const auto e = extensions::braid_quotient(n, big_n, s.nq());
    r.result["group"] = e.name();
    r.result["kernel"] = pc_to_json(e.kernel());
    r.result["quotient_order"] = e.quotient().elements.size();
    r.result["transversal"] = e.labels();
    json factors = json::array();
    for (std::size_t a = 0; a < e.quotient().elements.size(); ++a)
        for (std::size_t b = 0; b < e.quotient().elements.size(); ++b)
            if (!e.kernel().is_identity(e.factor(a, b))) factors.push_back({e.labels()[a], e.labels()[b], e.factor(a, b)});
    r.result["factor_set"] = factors;
    r.result["cocycle_failures"] = e.cocycle_failures();
    r.verdict = e.cocycle_failures() == 0 ? "pass" : "fail";
    return r;
}

Report cmd_torsion(std::size_t n, int big_n, const Settings& s) {
    Report r;
    r.inputs = {{"strands", n}, {"N", big_n}};
    const auto e = extensions::braid_quotient(n, big_n, s.nq());
    const auto rep = extensions::torsion_search(e, {s.search_bound});
    r.result = rep.to_json(e.labels());
    switch (rep.verdict) {
        case extensions::TorsionVerdict::torsion_free: r.verdict = "pass"; break;
        case extensions::TorsionVerdict::torsion: r.verdict = "fail"; break;
        case extensions::TorsionVerdict::inconclusive: r.verdict = "inconclusive"; break;
    }
    return r;
}

Report cmd_link_primitive(const std::string& file) {
    Report r;
    const auto d = links::LinkingDiagram::from_json(read_json_file(file));
    r.inputs = {{"file", file}, {"diagram", d.to_json()}};
    const auto rep = links::is_primitive_link(d);
    r.result = rep.to_json();
    r.verdict = rep.primitive ? "pass" : "fail";
    return r;
}

Report cmd_zones(int page, Int s_max, Int t_depth, bool exclusion) {
    Report r;
    const ssq::Window w{s_max, t_depth};
    r.inputs = {{"r", page}, {"s_max", s_max}, {"t_depth", t_depth}};
    if (exclusion) {
        const auto rec = ssq::zone_exclusion_check(page, w);
        r.result = rec.to_json();
        r.verdict = verdict_string(rec.verdict);
        return r;
    }
    r.result = ssq::zone(page, w).to_json();
    return r;
}

Report cmd_deps(int page, Int s, Int t, bool quadrant) {
    Report r;
    r.inputs = {{"r", page}, {"s", s}, {"t", t}, {"quadrant", quadrant}};
    const auto v = quadrant ? ssq::quadrant_dependency_set(page, s, t) : ssq::dependency_set(page, s, t);
    r.result["positions"] = ssq::points_to_json(v);
    return r;
}

Report cmd_specseq(const std::string& file, Int p) {
    Report r;
    const auto e = ssq::FiniteSpectralSequence::from_json(read_json_file(file));
    r.inputs = {{"file", file}, {"prime", p}};
    json pages = json::array();
    for (const auto& pt : e.positions())
        pages.push_back({{"at", {pt.first, pt.second}}, {"e2", e.invariants(pt, 2)}, {"e_infinity", e.invariants(pt, e.last_page() + 1)}});
    const auto rec = ssq::finspecseq_property_check(e, p);
    r.result = rec.to_json();
    r.result["positions"] = pages;
    r.verdict = verdict_string(rec.verdict);
    return r;
}

int exit_code(const std::string& verdict) {
    if (verdict == "pass") return exit_pass;
    if (verdict == "inconclusive") return exit_inconclusive;
    return exit_fail;
}

void emit(std::ostream& out, const std::string& command, const Report& r, const Settings& s) {
    json j;
    j["tool"] = "grouplab";
    j["version"] = kVersion;
    j["command"] = command;
    j["inputs"] = r.inputs;
    j["configuration"] = s.to_json();
    j["verdict"] = r.verdict;
    j["result"] = r.result;
    if (s.json_output) {
        out << j.dump(2) << "\n";
        return;
    }
    out << "grouplab " << command << "\n";
    out << "verdict: " << r.verdict << "\n";
    for (const auto& [k, v] : r.inputs.items()) out << "input " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& [k, v] : r.result.items()) out << (k == "verdict" ? "outcome" : k) << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Checks from computational group theory with machine-readable reports", "grouplab"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", s.json_output, "Emit the JSON report");
    app.add_option("--class-cap", s.class_cap, "Largest nilpotency class for quotient computations")->check(CLI::Range(1, 20));
    app.add_option("--generator-cap", s.generator_cap, "Largest free nilpotent cover")->check(CLI::Range(1, 4096));
    app.add_option("--weight-cap", s.weight_cap, "Magnus expansion degree cap")->check(CLI::Range(1, 30));
    app.add_option("--search-bound", s.search_bound, "Branch cap of the torsion search")->check(CLI::Range(1, 1 << 24));

    std::function<Report()> action;
    std::string command;
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->callback([&command, name] { command = name; });
        return c;
    };

    std::string file, word, images, fixture = "all";
    int c = 2, page = 2, m_max = 3, big_n = 2;
    std::size_t strands = 3;
    Int s_max = 20, t_depth = 20, ps = 0, pt = 0, prime = 2;
    bool strict_lcm = false, exclusion = false, quadrant = false;
    std::vector<Int> transfer;

    auto* parse = sub("parse", "Parse a presentation and echo it");
    parse->add_option("file", file, "Presentation file")->required();
    auto* weight = sub("weight", "Lower central weight of a word");
    weight->add_option("file", file, "Presentation file fixing the generators")->required();
    weight->add_option("word", word, "Word in the generators")->required();
    auto* prim = sub("primitive-relator", "Primitivity of a one-relator presentation");
    prim->add_option("file", file, "Presentation file")->required();
    prim->add_flag("--strict-lcm", strict_lcm, "Literal lcm reading of the exponent-sum criterion");
    auto* nq = sub("nq", "Nilpotent quotient G / gamma_{c+1}(G)");
    nq->add_option("file", file, "Presentation file")->required();
    nq->add_option("--class", c, "Nilpotency class")->check(CLI::Range(1, 20));
    auto* probe = sub("torsion-probe", "Torsion in G / gamma_{c+1}(G) for c = 1..c_max");
    probe->add_option("file", file, "Presentation file")->required();
    probe->add_option("--class", c, "Largest class")->check(CLI::Range(1, 20));
    auto* plcs = sub("plcs", "p-lower central series of a finite p-group");
    plcs->add_option("file", file, "pc JSON with a prime")->required();
    auto* unip = sub("unipotent", "Unipotence of a matrix action");
    unip->add_option("file", file, "Module JSON")->required();
    unip->add_option("--transfer", transfer, "Primes for the mod-p transfer check")->delimiter(',');
    auto* power = sub("power-lemma", "Power lemmas for matrices and automorphisms");
    auto* pm = power->add_option("--matrix", file, "Matrix JSON");
    auto* pg = power->add_option("--group", file, "pc JSON of a p-group; all H_1-trivial automorphisms unless --images");
    pm->excludes(pg);
    power->add_option("--images", images, "Images of the pc-generators as exponent vectors");
    power->require_option(1, 2);
    auto* tau = sub("tau-check", "Tau equation and commutator inclusions on split fixtures");
    tau->add_option("--fixture", fixture, "Fixture name or all");
    tau->add_option("--m", m_max, "Largest m");
    auto* bq = sub("braid-quotient", "B_n / gamma_N(P_n) as an extension with factor set");
    bq->add_option("--braid", strands, "Strands n")->required();
    bq->add_option("--class", big_n, "N")->required();
    auto* tor = sub("torsion", "Torsion search in B_n / gamma_N(P_n)");
    tor->add_option("--braid", strands, "Strands n")->required();
    tor->add_option("--class", big_n, "N")->required();
    auto* link = sub("link-primitive", "Primitivity of a linking diagram");
    link->add_option("file", file, "Link JSON")->required();
    auto* zones = sub("zones", "Zone of influence Z_r");
    zones->add_option("--r", page, "Page r");
    zones->add_option("--s-max", s_max, "Window width");
    zones->add_option("--t-depth", t_depth, "Window depth");
    zones->add_flag("--exclusion", exclusion, "Check that no point has s + t <= 0 for all pages up to r");
    auto* deps = sub("deps", "Dependency set V(r, s, t)");
    deps->add_option("--r", page, "Page r");
    deps->add_option("--s", ps, "s");
    deps->add_option("--t", pt, "t");
    deps->add_flag("--quadrant", quadrant, "Drop positions outside the fourth quadrant");
    auto* spec = sub("specseq", "Finite spectral sequence fixture check");
    spec->add_option("file", file, "Spectral sequence JSON")->required();
    spec->add_option("--prime", prime, "Prime p");

    std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        Report r;
        if (command == "parse") r = cmd_parse(file);
        else if (command == "weight") r = cmd_weight(file, word, s);
        else if (command == "primitive-relator") r = cmd_primitive_relator(file, strict_lcm, s);
        else if (command == "nq") r = cmd_nq(file, c, s);
        else if (command == "torsion-probe") r = cmd_torsion_probe(file, c, s);
        else if (command == "plcs") r = cmd_plcs(file);
        else if (command == "unipotent") r = cmd_unipotent(file, transfer);
        else if (command == "power-lemma") r = pm->count() ? cmd_power_lemma_matrix(file) : cmd_power_lemma_group(file, images);
        else if (command == "tau-check") r = cmd_tau_check(fixture, m_max);
        else if (command == "braid-quotient") r = cmd_braid_quotient(strands, big_n, s);
        else if (command == "torsion") r = cmd_torsion(strands, big_n, s);
        else if (command == "link-primitive") r = cmd_link_primitive(file);
        else if (command == "zones") r = cmd_zones(page, s_max, t_depth, exclusion);
        else if (command == "deps") r = cmd_deps(page, ps, pt, quadrant);
        else if (command == "specseq") r = cmd_specseq(file, prime);
        else throw InputError("unknown command");
        emit(out, command, r, s);
        return exit_code(r.verdict);
    } catch (const InputError& e) {
        err << "grouplab: " << e.what() << "\n";
        return exit_input;
    } catch (const CapExceeded& e) {
        Report r;
        r.verdict = "inconclusive";
        r.result["reason"] = e.what();
        emit(out, command, r, s);
        return exit_inconclusive;
    } catch (const OverflowError& e) {
        Report r;
        r.verdict = "inconclusive";
        r.result["reason"] = e.what();
        emit(out, command, r, s);
        return exit_inconclusive;
    } catch (const std::exception& e) {
        err << "grouplab: internal error: " << e.what() << "\n";
        return exit_input;
    }
}

}  // namespace grouplab::cli
