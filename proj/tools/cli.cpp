// Command-line front end: map analysis, crossing reports, network
// compilation/extraction, dataset generation, and the depth/width tradeoff
// table. Exit codes: 0 success, 2 parse/input error, 3 resource cap,
// 4 invariant violation (internal bug).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pwldyn/pwldyn.hpp"

using namespace pwldyn;

namespace {

struct MapSource {
    PwlFunction f;
    std::string description;
    bool approximate = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// tent:MU | logistic:R:N | canonical:3|4|5 | file:PATH
MapSource parse_map_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("map spec needs kind:args, got: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string args = spec.substr(colon + 1);
    if (kind == "tent") {
        return {tent(parse_rational(args)), "tent(" + args + ")", false};
    }
    if (kind == "logistic") {
        auto parts = split(args, ':');
        if (parts.size() != 2) throw ParseError("logistic spec needs logistic:R:N");
        Rational r = parse_rational(parts[0]);
        unsigned long n = std::stoul(parts[1]);
        return {logistic_approx(r, unsigned(n)),
                "logistic(" + parts[0] + ") on a " + parts[1] + "-piece grid", true};
    }
    if (kind == "canonical") {
        if (args == "3") return {canonical_period3(), "canonical period-3 map", false};
        if (args == "4") return {canonical_period4(), "canonical period-4 map", false};
        if (args == "5") return {canonical_period5(), "canonical period-5 map", false};
        throw ParseError("canonical spec must be canonical:3|4|5");
    }
    if (kind == "file") {
        return {parse_pwl(read_file(args)), "file " + args, false};
    }
    throw ParseError("unknown map kind: " + kind);
}

std::string sig12(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ParseError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

void print_approx_header(std::ostream& out, const MapSource& src, const std::string& format) {
    if (!src.approximate) return;
    if (format == "csv")
        out << "# approximate = true\n";
    else
        out << "approximate: true\n";
}

std::string orbit_line(const Cycle& c) {
    std::string out = "period=" + std::to_string(c.period) + " orbit=";
    for (std::size_t i = 0; i < c.points.size(); ++i)
        out += (i ? "," : "") + to_string(c.points[i]);
    return out;
}

/// Chain for the map's dominant odd period, reducing even periods 2^e * p to
/// the odd period p of f^(2^e).
struct ChainContext {
    PwlFunction f;          // the map the chain belongs to (f or an iterate)
    CoveringChain chain;
    unsigned long odd_period;
};

std::optional<ChainContext> dominant_chain(const PwlFunction& f, unsigned long search_cap,
                                           std::size_t piece_cap) {
    PrimePeriodResult prime = prime_period(f, search_cap, piece_cap);
    if (!prime.key || prime.key->power_of_two()) return std::nullopt;
    unsigned long m = 1ul << prime.key->two_exponent;
    PwlFunction g = m == 1 ? f : iterate(f, unsigned(m), piece_cap);
    Cycle cycle;
    if (m == 1) {
        cycle = prime.witnesses.front();
    } else {
        cycle.period = unsigned(prime.key->odd_part);
        Rational x = prime.witnesses.front().points.front();
        for (unsigned long i = 0; i < prime.key->odd_part; ++i) {
            cycle.points.push_back(x);
            x = g.eval(x);
        }
    }
    return ChainContext{g, extract_chain(build_covering_graph(g, cycle)), prime.key->odd_part};
}

int cmd_analyze(const MapSource& src, unsigned long search_cap, std::size_t piece_cap,
                Output& out_sink) {
    std::ostream& out = out_sink.stream();
    print_approx_header(out, src, "text");
    out << "map: " << src.description << "\n";
    PrimePeriodResult prime = prime_period(src.f, search_cap, piece_cap);
    if (!prime.key) {
        out << "prime period: none found up to cap " << search_cap << "\n";
        return 0;
    }
    out << "prime period: " << prime.key->value() << (prime.exact ? "" : " (search incomplete)")
        << " (up to cap " << search_cap << ")\n";
    for (const Cycle& c : prime.witnesses) out << orbit_line(c) << "\n";
    if (!prime.skipped.empty()) {
        out << "skipped at piece cap:";
        for (unsigned long n : prime.skipped) out << " " << n;
        out << "\n";
    }
    FixedPoints fixed = solve_equals_identity(src.f);
    for (const Interval& seg : fixed.segments) out << "fixed segment: " << seg.str() << "\n";
    auto ctx = dominant_chain(src.f, search_cap, piece_cap);
    if (!ctx) {
        out << "regime: at most polynomial crossings (no odd period > 1 found)\n";
        return 0;
    }
    out << "covering chain (J_0 first):";
    for (const Interval& j : ctx->chain.intervals) out << " " << j.str();
    out << "\nr: " << ctx->chain.r << "\n";
    out << "rho: " << sig12(rho(ctx->chain.r)) << "\n";
    out << "regime: exponential crossings";
    if (ctx->odd_period != prime.key->value())
        out << " (for f^" << (prime.key->value() / ctx->odd_period) << ", odd period "
            << ctx->odd_period << ")";
    out << "\n";
    return 0;
}

int cmd_cycles(const MapSource& src, unsigned n, std::size_t piece_cap, Output& out_sink) {
    std::ostream& out = out_sink.stream();
    print_approx_header(out, src, "text");
    for (const Cycle& c : find_cycles(src.f, n, piece_cap)) out << orbit_line(c) << "\n";
    return 0;
}

int cmd_covering(const MapSource& src, unsigned n, std::size_t piece_cap, Output& out_sink) {
    std::ostream& out = out_sink.stream();
    print_approx_header(out, src, "text");
    auto cycles = find_cycles(src.f, n, piece_cap);
    if (cycles.empty()) throw DomainError("no cycle of period " + std::to_string(n));
    CoveringGraph g = build_covering_graph(src.f, cycles.front());
    for (std::size_t i = 0; i < g.intervals.size(); ++i)
        out << "I_" << i << ": " << g.intervals[i].str() << "\n";
    for (auto [i, j] : g.edges()) out << "edge: I_" << i << " -> I_" << j << "\n";
    CoveringChain chain = extract_chain(g);
    out << "chain:";
    for (int idx : chain.chain) out << " I_" << idx;
    out << "\nr: " << chain.r << "\n";
    out << "A:\n";
    for (const auto& row : chain.matrix_a) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
        out << "\n";
    }
    return 0;
}

int cmd_iterate(const MapSource& src, unsigned t_max, const std::vector<std::string>& interval,
                unsigned long search_cap, std::size_t piece_cap, Output& out_sink) {
    std::ostream& out = out_sink.stream();
    print_approx_header(out, src, "csv");
    std::vector<Interval> columns;
    double growth = 1.0;
    if (!interval.empty()) {
        columns.push_back({parse_rational(interval[0]), parse_rational(interval[1])});
    } else {
        auto ctx = dominant_chain(src.f, search_cap, piece_cap);
        if (ctx) {
            for (int pos : ctx->chain.display_positions())
                columns.push_back(ctx->chain.intervals[pos]);
            growth = rho(ctx->chain.r);
        } else {
            columns.push_back(src.f.domain());
        }
    }
    out << "t";
    for (std::size_t i = 0; i < columns.size(); ++i) out << ",delta_" << i;
    out << ",lower_bound\n";
    unsigned completed = 0;
    try {
        for (unsigned t = 1; t <= t_max; ++t) {
            PwlFunction ft = iterate(src.f, t, piece_cap);
            out << t;
            for (const Interval& j : columns)
                out << "," << count_crossings(ft, j.lo, j.hi);
            out << "," << sig12(std::pow(growth, t)) << "\n";
            completed = t;
        }
    } catch (const ResourceCapError& e) {
        std::cerr << e.what() << " (largest completed t = " << completed << ")\n";
        return 3;
    }
    return 0;
}

int cmd_compile(const std::string& mu_str, unsigned k, Output& out_sink) {
    Rational mu = parse_rational(mu_str);
    ReluNetwork net = stack(compile_tent(mu), k);
    out_sink.stream() << print_network(net);
    PwlFunction f = extract_pwl(net, {rat(0), rat(1)});
    std::cerr << "depth: " << net.depth() << "\nwidth: " << net.width()
              << "\npieces: " << f.pieces() << "\n";
    return 0;
}

int cmd_extract(const std::string& path, Output& out_sink) {
    ReluNetwork net = parse_network(read_file(path));
    out_sink.stream() << print_pwl(extract_pwl(net, {rat(0), rat(1)}));
    return 0;
}

int cmd_dataset(const MapSource& src, unsigned m, unsigned k, const std::string& x_str,
                const std::string& y_str, unsigned long n_pairs, std::size_t piece_cap,
                const std::string& format, Output& out_sink) {
    std::ostream& out = out_sink.stream();
    print_approx_header(out, src, format);
    LabeledDataset d = build_alternating_dataset(src.f, m, k, parse_rational(x_str),
                                                 parse_rational(y_str), n_pairs, piece_cap);
    if (format == "csv") {
        out << "x,label\n";
        for (const LabeledPoint& p : d.points) out << to_string(p.x) << "," << p.label << "\n";
    } else {
        out << "threshold: " << to_string(d.threshold) << "\n";
        for (const LabeledPoint& p : d.points)
            out << to_string(p.x) << " -> " << p.label << "\n";
    }
    return 0;
}

int cmd_tradeoff(int p, unsigned k, Output& out_sink) {
    std::vector<unsigned> ls;
    for (unsigned l = 1; l <= k; ++l) ls.push_back(l);
    std::ostream& out = out_sink.stream();
    out << "l,u_max,bound_value,vacuous\n";
    for (const TradeoffRow& row : tradeoff_table(p, k, ls))
        out << row.l << "," << row.u_max << "," << sig12(row.bound_value) << ","
            << (row.vacuous ? "true" : "false") << "\n";
    return 0;
}

int cmd_bias_experiment(const std::string& eps_str, Output& out_sink) {
    Rational eps = parse_rational(eps_str);
    Rational phi_hat = rho_bracket(1, rat(1, 1000000000000L)).second;
    if (eps < 0 || eps >= phi_hat) throw DomainError("epsilon must satisfy 0 <= eps < phi_hat");
    std::ostream& out = out_sink.stream();
    out << "phi_hat: " << to_string(phi_hat) << "\n";
    auto report = [&](const std::string& name, const Rational& mu) {
        bool has3 = !find_cycles(tent(mu), 3).empty();
        out << name << ": period-3 cycle " << (has3 ? "present" : "absent") << "\n";
    };
    report("tent(phi_hat)", phi_hat);
    report("tent(phi_hat - eps)", phi_hat - eps);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact piecewise-linear dynamics toolkit"};
    app.require_subcommand(1);

    std::size_t piece_cap = kDefaultPieceCap;
    double tol = 1e-12;
    std::string format = "csv";
    std::string out_path;
    app.add_option("--cap", piece_cap, "piece-count budget for iteration");
    app.add_option("--tol", tol, "bisection tolerance for rho");
    app.add_option("--format", format, "output format: csv|text")
        ->check(CLI::IsMember({"csv", "text"}));
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    std::string map_spec, mu_str, net_path, x_str, y_str, eps_str;
    unsigned n_period = 0, t_max = 0, k_arg = 0, m_arg = 1;
    unsigned long search_cap = 12, n_pairs = 0;
    int r_arg = 1, p_arg = 3;
    std::vector<std::string> interval;

    auto* analyze = app.add_subcommand("analyze", "prime period, chain, growth regime");
    analyze->add_option("map", map_spec, "tent:MU | logistic:R:N | canonical:3|4|5 | file:PATH")
        ->required();
    analyze->add_option("--search-cap", search_cap, "largest candidate period");

    auto* iterate_cmd = app.add_subcommand("iterate", "per-iterate crossing counts (CSV)");
    iterate_cmd->add_option("map", map_spec)->required();
    iterate_cmd->add_option("t_max", t_max)->required();
    iterate_cmd->add_option("--interval", interval, "count crossings of [x, y] instead")
        ->expected(2);
    iterate_cmd->add_option("--search-cap", search_cap);

    auto* cycles_cmd = app.add_subcommand("cycles", "exact cycles of a given least period");
    cycles_cmd->add_option("map", map_spec)->required();
    cycles_cmd->add_option("period", n_period)->required();

    auto* covering_cmd = app.add_subcommand("covering", "covering graph, chain, and matrix");
    covering_cmd->add_option("map", map_spec)->required();
    covering_cmd->add_option("period", n_period)->required();

    auto* rho_cmd = app.add_subcommand("rho", "root of lambda^(r+1) - lambda^r - 1 in (1,2)");
    rho_cmd->add_option("r", r_arg)->required();

    auto* compile_cmd = app.add_subcommand("compile", "tent map to stacked relu network");
    compile_cmd->add_option("mu", mu_str)->required();
    compile_cmd->add_option("k", k_arg)->required();

    auto* extract_cmd = app.add_subcommand("extract", "network file to exact PWL document");
    extract_cmd->add_option("network", net_path)->required();

    auto* dataset_cmd = app.add_subcommand("dataset", "alternating labeled dataset from f^(k*m)");
    dataset_cmd->add_option("map", map_spec)->required();
    dataset_cmd->add_option("k", k_arg)->required();
    dataset_cmd->add_option("x", x_str)->required();
    dataset_cmd->add_option("y", y_str)->required();
    dataset_cmd->add_option("n", n_pairs)->required();
    dataset_cmd->add_option("--m", m_arg, "outer iterate multiplier");

    auto* tradeoff_cmd = app.add_subcommand("tradeoff", "depth/width table for the 1/4 bound");
    tradeoff_cmd->add_option("p", p_arg)->required();
    tradeoff_cmd->add_option("k", k_arg)->required();

    auto* bias_cmd = app.add_subcommand("bias-experiment", "period-3 brittleness at the golden ratio");
    bias_cmd->add_option("epsilon", eps_str)->required();

    // let --cap/--tol/--format/--out appear after subcommand arguments
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Output out(out_path);
        if (*analyze) return cmd_analyze(parse_map_spec(map_spec), search_cap, piece_cap, out);
        if (*iterate_cmd)
            return cmd_iterate(parse_map_spec(map_spec), t_max, interval, search_cap, piece_cap,
                               out);
        if (*cycles_cmd) return cmd_cycles(parse_map_spec(map_spec), n_period, piece_cap, out);
        if (*covering_cmd) return cmd_covering(parse_map_spec(map_spec), n_period, piece_cap, out);
        if (*rho_cmd) {
            out.stream() << sig12(rho(r_arg, tol)) << "\n";
            return 0;
        }
        if (*compile_cmd) return cmd_compile(mu_str, k_arg, out);
        if (*extract_cmd) return cmd_extract(net_path, out);
        if (*dataset_cmd)
            return cmd_dataset(parse_map_spec(map_spec), m_arg, k_arg, x_str, y_str, n_pairs,
                               piece_cap, format, out);
        if (*tradeoff_cmd) return cmd_tradeoff(p_arg, k_arg, out);
        if (*bias_cmd) return cmd_bias_experiment(eps_str, out);
    } catch (const ResourceCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
