#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <design2/bases.hpp>
#include <design2/exact_sim.hpp>
#include <design2/sampler.hpp>
#include <design2/verify.hpp>

using nlohmann::json;
using namespace design2;

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::invalid_argument("cannot open output file: " + path);
    os << text;
}

BitVec parse_bits01(const std::string& s, unsigned n) {
    if (s.size() != n)
        throw std::invalid_argument("coordinate string '" + s + "' is not " +
                                    std::to_string(n) + " bits");
    BitVec v(n);
    for (unsigned i = 0; i < n; ++i) {
        if (s[i] == '1')
            v.set(i, true);
        else if (s[i] != '0')
            throw std::invalid_argument("coordinate string must be over {0,1}");
    }
    return v;
}

struct SampleHeader {
    unsigned n = 0;
    std::string construction;
    std::vector<std::string> m_coords;  // alpha, beta, gamma, delta as 01 strings
};

SampleHeader parse_sample_header(const std::string& text) {
    SampleHeader h;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string hash, key;
        if (!(ls >> hash) || hash != "#") continue;
        if (!(ls >> key)) continue;
        if (key == "n") {
            ls >> h.n;
        } else if (key == "construction") {
            ls >> h.construction;
        } else if (key == "M") {
            std::string k, v;
            while (ls >> k >> v) h.m_coords.push_back(v);
        }
    }
    return h;
}

std::string render_sample(const DesignSample& s, MulStrategy strategy) {
    CircuitMetrics m = metrics(s.circuit);
    std::ostringstream os;
    os << "# design2 sample\n";
    os << "# n " << s.n << "\n";
    os << "# construction " << to_string(s.construction) << "\n";
    os << "# strategy " << to_string(strategy) << "\n";
    os << "# seed " << s.seed << "\n";
    os << "# entropy_bits_consumed " << s.entropy_bits_consumed << "\n";
    os << "# M alpha " << s.M.alpha().to_string() << " beta " << s.M.beta().to_string()
       << " gamma " << s.M.gamma().to_string() << " delta " << s.M.delta().to_string()
       << "\n";
    os << "# pauli a " << s.pauli.a.to_string01() << " b " << s.pauli.b.to_string01()
       << "\n";
    os << "# gate_count " << m.gate_count << "\n";
    os << "# depth " << m.depth << "\n";
    os << "# ancillas " << m.ancilla_count << "\n";
    os << "# clifford_only " << (s.circuit.clifford_only() ? 1 : 0) << "\n";
    os << serialize(s.circuit);
    return os.str();
}

int cmd_sample(unsigned n, const std::string& construction_name, std::uint64_t seed,
               const std::string& strategy_name, const std::string& output) {
    Construction con;
    if (!parse_construction(construction_name, con))
        throw std::invalid_argument("unknown construction: " + construction_name);
    SamplerOptions opts;
    if (!parse_strategy(strategy_name, opts.strategy))
        throw std::invalid_argument("unknown strategy: " + strategy_name);
    DesignSample s = sample(n, con, seed, opts);
    write_out(output, render_sample(s, opts.strategy));
    return 0;
}

int cmd_verify_ensemble(unsigned n, const std::string& construction_name,
                        const std::string& output) {
    Construction con;
    if (!parse_construction(construction_name, con))
        throw std::invalid_argument("unknown construction: " + construction_name);
    auto ens = enumerate_ensemble(n, con);
    std::vector<CliffordCircuit> circuits, parts;
    circuits.reserve(ens.size());
    parts.reserve(ens.size());
    for (const DesignSample& s : ens) {
        circuits.push_back(s.circuit);
        parts.push_back(u_part(s));
    }

    TwirlReport tw = bilateral_twirl_check(circuits, n);
    MixingReport mix = pauli_mixing_check(parts, n);

    json rep;
    rep["schema"] = "v1";
    rep["command"] = "verify";
    rep["mode"] = "ensemble";
    rep["n"] = n;
    rep["construction"] = to_string(con);
    rep["ensemble_size"] = ens.size();
    rep["twirl"] = {{"pass", tw.pass},
                    {"diagonal_coefficient", rational_str(tw.diagonal_coefficient)},
                    {"failure", tw.failure}};
    rep["mixing"] = {{"pass", mix.pass}, {"failure", mix.failure}};
    bool pass = tw.pass && mix.pass;
    if (n == 1) {
        std::vector<DenseUnitary> us;
        us.reserve(ens.size());
        for (const DesignSample& s : ens) us.push_back(code_space_unitary(s.circuit));
        double fp = frame_potential(us);
        double ref = frame_potential(one_qubit_clifford_group());
        bool fp_ok = std::abs(fp - ref) <= 1e-9;
        rep["frame_potential"] = {{"value", fp}, {"clifford_reference", ref},
                                  {"pass", fp_ok}};
        pass = pass && fp_ok;
    }
    rep["pass"] = pass;
    write_out(output, rep.dump(2) + "\n");
    return pass ? 0 : 1;
}

int cmd_verify_sample(const std::string& path, unsigned n_flag,
                      const std::string& construction_flag, const std::string& against_m,
                      const std::string& output) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot open sample file: " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();

    SampleHeader header = parse_sample_header(text);
    unsigned n = n_flag != 0 ? n_flag : header.n;
    std::string construction_name =
        !construction_flag.empty() ? construction_flag : header.construction;
    if (n == 0)
        throw std::invalid_argument("width not given: pass --n or use a file with a header");
    if (construction_name.empty())
        throw std::invalid_argument(
            "construction not given: pass --construction or use a file with a header");
    Construction con;
    if (!parse_construction(construction_name, con))
        throw std::invalid_argument("unknown construction: " + construction_name);

    std::vector<std::string> coords;
    if (!against_m.empty()) {
        std::istringstream ms(against_m);
        std::string tok;
        while (std::getline(ms, tok, ',')) coords.push_back(tok);
    } else {
        coords = header.m_coords;
    }
    if (coords.size() != 4)
        throw std::invalid_argument(
            "expected four comma-separated coordinate strings (alpha,beta,gamma,delta)");

    CliffordCircuit c = parse_circuit(text);
    if (c.n_data() != n)
        throw std::invalid_argument("circuit width does not match the requested n");

    BasisSpec basis = construction_basis(n, con);
    const FieldCtxPtr& ctx = basis.ctx();
    Sl2Element m(FieldElement(ctx, parse_bits01(coords[0], n)),
                 FieldElement(ctx, parse_bits01(coords[1], n)),
                 FieldElement(ctx, parse_bits01(coords[2], n)),
                 FieldElement(ctx, parse_bits01(coords[3], n)));

    json rep;
    rep["schema"] = "v1";
    rep["command"] = "verify";
    rep["mode"] = "sample";
    rep["n"] = n;
    rep["construction"] = to_string(con);
    bool pass = false;
    if (c.clifford_only()) {
        InducesReport ir = check_induces(c, m, basis);
        pass = ir.pass;
        rep["method"] = "tableau";
        rep["structural_ok"] = ir.structural_ok;
        rep["failure"] = ir.failure;
        rep["phases"] = ir.phases;
    } else {
        PauliAction act = pauli_action(c);
        pass = act.bit_action() == induced_bit_action(m, basis);
        rep["method"] = "dense";
        rep["failure"] = pass ? "" : "label action differs from the induced action of M";
    }
    rep["pass"] = pass;
    write_out(output, rep.dump(2) + "\n");
    return pass ? 0 : 1;
}

struct BenchRow {
    unsigned n = 0;
    std::string construction;
    std::string strategy;
    std::size_t gate_count = 0;
    std::size_t depth = 0;
    unsigned ancillas = 0;
    double wall_ms = 0.0;
};

int cmd_bench(const std::vector<unsigned>& ns, const std::vector<std::string>& cons,
              const std::vector<std::string>& strategies, std::uint64_t seed,
              unsigned workers, bool wall_time, const std::string& output) {
    struct Cell {
        unsigned n;
        Construction con;
        MulStrategy strat;
    };
    std::vector<Cell> cells;
    for (unsigned n : ns)
        for (const std::string& cname : cons)
            for (const std::string& sname : strategies) {
                Cell cell;
                cell.n = n;
                if (!parse_construction(cname, cell.con))
                    throw std::invalid_argument("unknown construction: " + cname);
                if (!parse_strategy(sname, cell.strat))
                    throw std::invalid_argument("unknown strategy: " + sname);
                if (cell.con == Construction::selfdual && !check_admissible(n).admissible)
                    throw std::invalid_argument(
                        "selfdual construction needs admissible n; " + std::to_string(n) +
                        " is not");
                cells.push_back(cell);
            }

    std::vector<BenchRow> rows(cells.size());
    auto run_cell = [&](std::size_t i) {
        const Cell& cell = cells[i];
        SamplerOptions opts;
        opts.strategy = cell.strat;
        auto t0 = std::chrono::steady_clock::now();
        DesignSample s = sample(cell.n, cell.con, seed, opts);
        auto t1 = std::chrono::steady_clock::now();
        CircuitMetrics m = metrics(s.circuit);
        rows[i] = BenchRow{cell.n,
                           to_string(cell.con),
                           to_string(cell.strat),
                           m.gate_count,
                           m.depth,
                           m.ancilla_count,
                           std::chrono::duration<double, std::milli>(t1 - t0).count()};
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < cells.size(); i += workers) run_cell(i);
            });
        for (auto& th : pool) th.join();
    }

    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
        return std::tie(a.n, a.construction, a.strategy) <
               std::tie(b.n, b.construction, b.strategy);
    });

    std::ostringstream os;
    os << "n,construction,strategy,gate_count,depth,ancillas,wall_time_ms\n";
    for (const BenchRow& r : rows) {
        os << r.n << ',' << r.construction << ',' << r.strategy << ',' << r.gate_count
           << ',' << r.depth << ',' << r.ancillas << ',';
        if (wall_time) os << std::fixed << std::setprecision(3) << r.wall_ms;
        os << '\n';
    }
    write_out(output, os.str());
    return 0;
}

int cmd_field(unsigned n, const std::string& output) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    std::ostringstream os;
    AdmissibilityReport rep = check_admissible(n);
    os << "n " << n << "\n";
    os << "2n+1 " << 2 * n + 1 << " prime " << (rep.prime_ok ? 1 : 0) << "\n";
    os << "subgroup_index_e " << rep.e << " gcd_ok " << (rep.gcd_ok ? 1 : 0) << "\n";
    os << "admissible " << (rep.admissible ? 1 : 0) << "\n";
    if (n <= 64) {
        auto ctx = FieldCtx::make(n);
        os << "polynomial_modulus " << ctx->modulus().to_string() << "\n";
        if (rep.admissible) {
            BasisSpec sd = build_selfdual_basis(n);
            os << "selfdual_modulus " << sd.ctx()->modulus().to_string() << "\n";
            os << "selfdual_W_identity " << (sd.W().is_identity() ? 1 : 0) << "\n";
        }
    }
    write_out(output, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact unitary 2-design sampler and verifier"};
    app.require_subcommand(1);

    unsigned n = 0;
    std::uint64_t seed = 0;
    std::string construction;
    std::string strategy = "fft_radix3";
    std::string output;

    CLI::App* sc_sample = app.add_subcommand("sample", "sample a design element as a circuit");
    sc_sample->add_option("--n", n, "number of qubits")->required();
    sc_sample->add_option("--construction", construction,
                          "selfdual | poly_mod4 | poly_recursive")
        ->required();
    sc_sample->add_option("--seed", seed, "RNG seed (default 0)");
    sc_sample->add_option("--strategy", strategy,
                          "schoolbook | karatsuba | fft_radix3 (default fft_radix3)");
    sc_sample->add_option("--output", output, "write to file instead of stdout");

    bool ensemble_mode = false;
    std::string sample_path, against_m;
    CLI::App* sc_verify = app.add_subcommand("verify", "verify a sample or a small ensemble");
    sc_verify->add_flag("--ensemble", ensemble_mode,
                        "exhaustively check the whole ensemble (n <= 2)");
    sc_verify->add_option("--sample", sample_path, "circuit file produced by `sample`");
    sc_verify->add_option("--against-M", against_m,
                          "alpha,beta,gamma,delta as 01-strings (defaults to file header)");
    sc_verify->add_option("--n", n, "number of qubits (defaults to file header)");
    sc_verify->add_option("--construction", construction,
                          "construction (defaults to file header)");
    sc_verify->add_option("--output", output, "write the JSON report to a file");

    std::vector<unsigned> bench_ns;
    std::vector<std::string> bench_cons{"poly_recursive"};
    std::vector<std::string> bench_strategies{"schoolbook", "karatsuba"};
    unsigned workers = 1;
    bool no_wall_time = false;
    CLI::App* sc_bench = app.add_subcommand("bench", "gate-count and depth table (CSV)");
    sc_bench->add_option("--n", bench_ns, "qubit counts")->required()->delimiter(',');
    sc_bench->add_option("--construction", bench_cons, "constructions to measure")
        ->delimiter(',');
    sc_bench->add_option("--strategy", bench_strategies, "multiplication strategies")
        ->delimiter(',');
    sc_bench->add_option("--seed", seed, "RNG seed shared by every cell");
    sc_bench->add_option("--workers", workers, "shard cells across this many threads");
    sc_bench->add_flag("--no-wall-time", no_wall_time,
                       "leave the wall_time column empty (byte-stable output)");
    sc_bench->add_option("--output", output, "write the CSV to a file");

    CLI::App* sc_field = app.add_subcommand("field", "field and basis diagnostics");
    sc_field->add_option("--n", n, "extension degree")->required();
    sc_field->add_option("--output", output, "write to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_sample->parsed()) return cmd_sample(n, construction, seed, strategy, output);
        if (sc_verify->parsed()) {
            if (ensemble_mode && !sample_path.empty())
                throw std::invalid_argument("--ensemble and --sample are mutually exclusive");
            if (ensemble_mode) {
                if (n == 0 || construction.empty())
                    throw std::invalid_argument("--ensemble needs --n and --construction");
                return cmd_verify_ensemble(n, construction, output);
            }
            if (!sample_path.empty())
                return cmd_verify_sample(sample_path, n, construction, against_m, output);
            throw std::invalid_argument("verify needs --ensemble or --sample <file>");
        }
        if (sc_bench->parsed())
            return cmd_bench(bench_ns, bench_cons, bench_strategies, seed, workers,
                             !no_wall_time, output);
        if (sc_field->parsed()) return cmd_field(n, output);
    } catch (const SupportOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
