#include "pisot/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <regex>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using namespace pisot;

// "7", "-3/2" or "1.272"
Rational parse_rational(const std::string& s) {
    static const std::regex fraction(R"(^[+-]?\d+(/\d+)?$)");
    static const std::regex decimal(R"(^([+-]?)(\d*)\.(\d+)$)");
    std::smatch m;
    if (std::regex_match(s, fraction)) {
        Rational q(s[0] == '+' ? s.substr(1) : s);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator in " + s);
        q.canonicalize();
        return q;
    }
    if (std::regex_match(s, m, decimal)) {
        Integer num(m[2].str().empty() ? std::string("0") : m[2].str());
        Integer den = 1;
        for (char c : m[3].str()) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        Rational q(m[1].str() == "-" ? Integer(-num) : num, den);
        q.canonicalize();
        return q;
    }
    throw std::invalid_argument("not a rational number: " + s);
}

std::vector<Family> parse_family(const std::string& s) {
    if (s == "three") return {Family::Three};
    if (s == "four") return {Family::Four};
    return {Family::Three, Family::Four};
}

int cmd_enumerate(int degree, const std::vector<std::string>& bounds, bool closed, const std::string& out) {
    const Rational a = parse_rational(bounds.at(0)), b = parse_rational(bounds.at(1));
    const auto iv = closed ? RationalInterval::closed(a, b) : RationalInterval::open(a, b);
    const auto recs = enumerate_pisot(degree, iv);
    std::ofstream file;
    if (!out.empty()) {
        file.open(out);
        if (!file) throw std::runtime_error("cannot open " + out);
    }
    std::ostream& os = out.empty() ? std::cout : file;
    for (const auto& r : recs) os << r.to_line() << '\n';
    std::cerr << recs.size() << " record(s) of degree " << degree << " in " << iv.to_string() << '\n';
    return 0;
}

int cmd_check(const std::string& poly, const std::string& relation, bool json) {
    const IntPoly f = parse_poly(poly);
    std::vector<RelationType> types;
    if (relation == "all") {
        for (RelationType r : kAllRelations)
            if (f.degree() >= arity(r)) types.push_back(r);
    } else if (auto r = parse_relation(relation)) {
        types.push_back(*r);
    } else {
        throw std::invalid_argument("unknown relation: " + relation);
    }
    RelationTester tester(f);
    std::vector<RelationVerdict> verdicts;
    for (RelationType r : types) verdicts.push_back(tester.test(r));
    const auto roots = certified_roots(f, default_root_eps());
    const auto pre = numeric_prefilter(roots, types, default_prefilter_threshold());

    if (json) {
        nlohmann::ordered_json out;
        out["polynomial"] = std::to_string(f.degree()) + " " + format_poly(f);
        out["verdicts"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            const auto& v = verdicts[i];
            nlohmann::ordered_json e;
            e["relation"] = std::string(tag(v.relation));
            e["holds"] = v.holds;
            e["witness"] = v.witness ? nlohmann::ordered_json(*v.witness) : nlohmann::ordered_json(nullptr);
            e["residual"] = v.residual ? nlohmann::ordered_json(v.residual->get_d()) : nlohmann::ordered_json(nullptr);
            e["min_residual"] = pre[i].residual.get_d();
            e["flagged"] = pre[i].flagged;
            out["verdicts"].push_back(std::move(e));
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << f.degree() << ' ' << format_poly(f) << '\n';
    for (const auto& v : verdicts) std::cout << v.to_line() << '\n';
    return 0;
}

void print_report_summary(const PipelineReport& report) {
    for (const auto& fr : report.families) {
        std::cout << family_name(fr.family) << "-term family, alpha < " << fr.alpha_max.get_str() << '\n';
        for (const auto& [d, recs] : fr.records)
            std::cout << "  degree " << d << " in " << target_interval(d, fr.terms, fr.alpha_max).describe() << ": "
                      << recs.size() << " (cover " << fr.cover_counts.at(d) << ")\n";
        std::cout << "  total " << fr.total_records() << '\n';
        for (RelationType r : fr.relations) {
            std::cout << "  " << tag(r) << ": survivors " << fr.survivors.at(r).size() << ", solutions";
            if (fr.solutions.at(r).empty()) std::cout << " none";
            for (const auto& p : fr.solutions.at(r)) std::cout << " [" << p.to_string() << "]";
            std::cout << '\n';
        }
    }
    std::cout << "shards " << report.shards_total << " (resumed " << report.shards_resumed << "), "
              << report.timings.at("total") << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pisot number enumeration and conjugate relation certification"};
    app.require_subcommand(1);

    int degree = 0;
    std::vector<std::string> bounds;
    std::string out_file;
    bool closed = false;
    auto* en = app.add_subcommand("enumerate", "List Pisot numbers of one degree in an interval");
    en->add_option("--degree", degree, "Degree")->required()->check(CLI::PositiveNumber);
    en->add_option("--interval", bounds, "Endpoints A B (integers, fractions or decimals)")->required()->expected(2);
    en->add_option("--out", out_file, "Output file (default: stdout)");
    en->add_flag("--closed", closed, "Use the closed interval [A, B]");

    std::string poly, relation = "all";
    bool json = false;
    auto* ck = app.add_subcommand("check", "Decide additive relations among the roots of a polynomial");
    ck->add_option("--poly", poly, "Coefficients, highest degree first")->required();
    ck->add_option("--relation", relation, "sum3zero|eqsum2|paireq|eqsum3|sum4zero|all");
    ck->add_flag("--json", json, "JSON output");

    PipelineConfig cfg;
    cfg.jobs = default_jobs();
    std::string family = "both", shard_base = "1/10";
    bool no_comb = false;
    std::string out_dir;
    auto* pl = app.add_subcommand("pipeline", "Run enumeration, filters and exact tests for a relation family");
    pl->add_option("--family", family, "three|four|both")->check(CLI::IsMember({"three", "four", "both"}));
    pl->add_option("--max-degree", cfg.max_degree, "Largest degree")->check(CLI::PositiveNumber);
    pl->add_option("--min-degree", cfg.min_degree, "Smallest degree (default: the family minimum)");
    pl->add_option("--jobs", cfg.jobs, "Worker threads (default: $PISOT_JOBS or all cores)")->check(CLI::PositiveNumber);
    pl->add_flag("--no-combinatorial", no_comb, "Skip the degree restrictions beyond the prime filter");
    pl->add_option("--out", out_dir, "Output directory");
    pl->add_flag("--resume", cfg.resume, "Reuse completed shards recorded in the journal");
    pl->add_option("--shard-base", shard_base, "Shard width up to degree 12");

    int verify_max = 8;
    int verify_jobs = default_jobs();
    std::string verify_out;
    auto* vp = app.add_subcommand("verify-paper", "Run both families and compare with the reference tables");
    vp->add_option("--max-degree", verify_max, "Largest degree")->check(CLI::PositiveNumber);
    vp->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
    vp->add_option("--out", verify_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*en) return cmd_enumerate(degree, bounds, closed, out_file);
        if (*ck) return cmd_check(poly, relation, json);
        if (*pl) {
            cfg.families = parse_family(family);
            cfg.use_combinatorial = !no_comb;
            cfg.out_dir = out_dir;
            cfg.shard_base = parse_rational(shard_base);
            const auto report = run_pipeline(cfg);
            print_report_summary(report);
            return 0;
        }
        if (*vp) {
            PipelineConfig vc;
            vc.max_degree = verify_max;
            vc.jobs = verify_jobs;
            vc.out_dir = verify_out;
            const auto report = run_pipeline(vc);
            print_report_summary(report);
            bool ok = true;
            for (const auto& c : verify_reference_tables(report)) {
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
                if (!c.pass) std::cout << ": " << c.detail;
                std::cout << '\n';
                ok = ok && c.pass;
            }
            return ok ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
