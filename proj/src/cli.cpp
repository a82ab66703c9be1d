#include "hqc/cli.hpp"

#include "hqc/io.hpp"
#include "hqc/linalg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace hqc::cli {

namespace {

using io::Json;

enum class Format { json, csv };

struct Globals {
    int n = 0; // 0 lets the command infer it
    std::optional<double> tol;
    std::uint64_t seed = 1;
    std::string out;
    std::string format;
};

// Rows of a sweep, printable as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

std::string csv_cell(const Json& v) {
    if (v.is_number_float()) {
        return io::format_real(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string render_table(const Table& t, Format format, const Json& meta) {
    std::ostringstream s;
    if (format == Format::csv) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) s << (c ? "," : "") << t.columns[c];
        s << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) s << (c ? "," : "") << csv_cell(row[c]);
            s << '\n';
        }
        return s.str();
    }
    Json doc = meta;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r;
        for (std::size_t c = 0; c < row.size(); ++c) r[t.columns[c]] = row[c];
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::string render_json(const Json& doc, Format format) {
    if (format == Format::csv) {
        throw InvalidArgument("this command only produces JSON");
    }
    return doc.dump(2) + "\n";
}

Format resolve_format(const Globals& g, Format fallback) {
    if (g.format.empty()) return fallback;
    if (g.format == "json") return Format::json;
    if (g.format == "csv") return Format::csv;
    throw InvalidArgument("--format must be json or csv");
}

double tolerance(const Globals& g, double fallback) {
    return g.tol.value_or(fallback);
}

// A loop given either as a JSON document or as one primitive step.
struct LoopSpec {
    std::string loop;
    std::string family;
    int beta = 0;
    int beta_bar = 0;
    std::string area;

    void add_to(CLI::App* app) {
        app->add_option("--loop", loop, "loop JSON (inline or file path)");
        app->add_option("--family", family, "primitive family C1..C4");
        app->add_option("--beta", beta, "first level index (1-based)");
        app->add_option("--beta-bar", beta_bar, "second level index (C2..C4)");
        app->add_option("--area", area, "oriented area, pi literals allowed");
    }

    bool has_step() const { return !family.empty(); }

    GateStep step() const {
        if (family.empty() || beta == 0 || area.empty()) {
            throw InvalidArgument("a primitive loop needs --family, --beta and --area");
        }
        GateStep s;
        s.family = parse_family(family);
        s.beta = beta;
        if (beta_bar != 0) s.beta_bar = beta_bar;
        s.area = io::parse_real(area);
        return s;
    }

    static int infer_n(const Globals& g, const GateStep& s) {
        if (g.n > 0) return g.n;
        return std::max(s.beta, s.beta_bar.value_or(0));
    }

    struct Resolved {
        LoopPath loop;
        std::optional<LoopFamily> family;
        std::optional<GateStep> step;
        std::optional<int> segments;
        int n;
    };

    Resolved resolve(const Globals& g) const {
        if (!loop.empty()) {
            if (has_step()) {
                throw InvalidArgument("give either --loop or a primitive step, not both");
            }
            io::LoopDocument doc = io::loop_from_json(io::load_json_argument(loop));
            const int n = doc.loop.n();
            return {std::move(doc.loop), doc.family, std::nullopt, doc.segments_per_edge, n};
        }
        const GateStep s = step();
        const int n = infer_n(g, s);
        validate_step(s, n);
        return {realize_step_as_loop(s, n), s.family, s, std::nullopt, n};
    }
};

// ---------------------------------------------------------------- connection

struct ConnectionCmd {
    std::string theta;
    std::string phi;
    std::string point;
    bool numeric = false;
    double step = kDefaultDifferenceStep;

    void add_to(CLI::App* app) {
        app->add_option("--theta", theta, "comma-separated theta values");
        app->add_option("--phi", phi, "comma-separated phi values");
        app->add_option("--point", point, "point JSON {theta, phi} (inline or file path)");
        app->add_flag("--numeric", numeric, "central-difference evaluation");
        app->add_option("--step", step, "difference step for --numeric");
    }

    std::string run(const Globals& g) const {
        ControlPoint p = ControlPoint::origin(std::max(g.n, 1));
        if (!point.empty()) {
            p = io::point_from_json(io::load_json_argument(point));
        } else if (!theta.empty()) {
            std::vector<double> t = io::parse_real_list(theta);
            std::vector<double> f = phi.empty() ? std::vector<double>(t.size(), 0.0) : io::parse_real_list(phi);
            if (f.size() != t.size()) {
                throw InvalidArgument("--theta and --phi need the same length");
            }
            p = ControlPoint::make(std::move(t), std::move(f));
        } else if (g.n <= 0) {
            throw InvalidArgument("give --theta, --point or --n");
        }
        if (g.n > 0 && p.n() != g.n) {
            throw InvalidArgument("--n disagrees with the point dimension");
        }
        const ConnectionValue c = numeric ? connection_numeric(p, step) : connection_analytic(p);
        Json doc;
        doc["command"] = "connection";
        doc["method"] = numeric ? "numeric" : "analytic";
        doc["point"] = io::point_to_json(p);
        const Json fields = io::connection_to_json(c);
        for (const auto& [key, value] : fields.items()) doc[key] = value;
        return render_json(doc, resolve_format(g, Format::json));
    }
};

// ---------------------------------------------------------------- holonomy

struct HolonomyCmd {
    LoopSpec spec;
    int segments = 0;

    void add_to(CLI::App* app) {
        spec.add_to(app);
        app->add_option("--segments", segments, "segments per edge");
    }

    std::string run(const Globals& g) const {
        const auto r = spec.resolve(g);
        const int segs = segments > 0 ? segments : r.segments.value_or(kDefaultSegmentsPerEdge);
        const UnitaryMatrix h = holonomy(r.loop, segs);
        Json doc;
        doc["command"] = "holonomy";
        doc["dim"] = h.dim();
        doc["segments_per_edge"] = segs;
        doc["edges"] = r.loop.edge_count();
        doc["entries"] = io::matrix_to_json(h.matrix());
        doc["unitarity_defect"] = h.raw_defect();
        if (r.family && r.loop.plane()) {
            doc["family"] = to_string(*r.family);
            doc["enclosed_area"] = enclosed_area(r.loop, *r.family);
        }
        if (r.step) {
            const UnitaryMatrix closed = primitive_holonomy(*r.step, r.n);
            const double distance = linalg::max_abs(h.matrix() - closed.matrix());
            doc["closed_form"] = io::matrix_to_json(closed.matrix());
            doc["distance_to_closed_form"] = distance;
            doc["pass"] = distance < tolerance(g, 1e-6);
        }
        return render_json(doc, resolve_format(g, Format::json));
    }
};

// ---------------------------------------------------------------- gate / compile

Json compilation_json(const Compilation& c) {
    Json doc;
    doc["program"] = io::program_to_json(c.program);
    doc["step_count"] = c.program.steps.size();
    doc["distance"] = c.distance;
    doc["residual_phase"] = c.residual_phase;
    return doc;
}

struct GateCmd {
    std::string name;
    std::string target;
    int segments = kDefaultSegmentsPerEdge;
    std::string sigma1;
    std::string sigma3;

    void add_to(CLI::App* app) {
        app->add_option("name", name, "xor, crot, swap, phase1, phase2 or uph1");
        app->add_option("--target", target, "target unitary JSON instead of a named gate");
        app->add_option("--segments", segments, "segments per edge for loop integration");
        app->add_option("--sigma1", sigma1, "phase area of the phase-rotation construction");
        app->add_option("--sigma3", sigma3, "rotation area of the phase-rotation construction");
    }

    std::string run(const Globals& g) const {
        if (name.empty() == target.empty()) {
            throw InvalidArgument("give exactly one of a gate name or --target");
        }
        if (segments < 1) {
            throw InvalidArgument("--segments must be positive");
        }
        Json doc;
        doc["command"] = "gate";
        GateProgram program;
        Matrix reference;
        if (!name.empty()) {
            PhaseRotationAreas areas;
            if (!sigma1.empty()) areas.sigma1 = io::parse_real(sigma1);
            if (!sigma3.empty()) areas.sigma3 = io::parse_real(sigma3);
            const NamedGate gate = parse_named_gate(name);
            program = two_qubit_gate(gate, areas);
            reference = standard_gate(gate, areas);
            doc["gate"] = to_string(gate);
        } else {
            reference = io::matrix_from_json(io::load_json_argument(target));
            program = compile_unitary(reference).program;
            doc["gate"] = "target";
        }
        std::vector<std::string> warnings;
        const UnitaryMatrix closed = evaluate_closed_form(program, &warnings);
        const UnitaryMatrix integrated = evaluate_integrated(program, segments);
        const auto aligned = linalg::distance_up_to_phase(reference, integrated.matrix());
        const double fidelity = linalg::phase_insensitive_fidelity(reference, integrated.matrix());
        doc["program"] = io::program_to_json(program);
        doc["standard"] = io::matrix_to_json(reference);
        doc["closed_form"] = io::matrix_to_json(closed.matrix());
        doc["integrated"] = io::matrix_to_json(integrated.matrix());
        doc["segments_per_edge"] = segments;
        doc["closed_form_distance"] = linalg::distance_up_to_phase(reference, closed.matrix()).distance;
        doc["distance"] = aligned.distance;
        doc["global_phase"] = aligned.phase;
        doc["fidelity"] = fidelity;
        doc["pass"] = aligned.distance < tolerance(g, 1e-6);
        doc["warnings"] = warnings;
        return render_json(doc, resolve_format(g, Format::json));
    }
};

struct CompileCmd {
    std::string target;
    int beta = 0;
    int beta_bar = 0;

    void add_to(CLI::App* app) {
        app->add_option("--target", target, "target unitary JSON (inline or file path)")->required();
        app->add_option("--beta", beta, "block level (2x2 targets)");
        app->add_option("--beta-bar", beta_bar, "second block level (2x2 targets)");
    }

    std::string run(const Globals& g) const {
        const Matrix t = io::matrix_from_json(io::load_json_argument(target));
        Compilation c = [&] {
            if (beta != 0 || beta_bar != 0) {
                const int n = g.n > 0 ? g.n : std::max(beta, beta_bar);
                return compile_u2_block(t, beta, beta_bar, n);
            }
            if (g.n > 0 && g.n != t.rows()) {
                throw InvalidArgument("--n disagrees with the target dimension");
            }
            return compile_unitary(t);
        }();
        Json doc;
        doc["command"] = "compile";
        const Json fields = compilation_json(c);
        for (const auto& [key, value] : fields.items()) doc[key] = value;
        doc["evaluated"] = io::matrix_to_json(evaluate_closed_form(c.program).matrix());
        doc["pass"] = c.distance < tolerance(g, 1e-8);
        return render_json(doc, resolve_format(g, Format::json));
    }
};

// ---------------------------------------------------------------- verify

struct VerifyCmd {
    LoopSpec spec;
    std::string program;
    std::string gate;
    std::string total_time = "2000";
    int steps = 0;
    double epsilon0 = 1.0;

    void add_to(CLI::App* app) {
        spec.add_to(app);
        app->add_option("--program", program, "gate program JSON (inline or file path)");
        app->add_option("--gate", gate, "named two-qubit program");
        app->add_option("--T", total_time, "total time per loop in units of 1/eps0");
        app->add_option("--steps", steps, "time steps per loop (0 = default)");
        app->add_option("--epsilon0", epsilon0, "energy gap");
    }

    std::string run(const Globals& g) const {
        const double t = io::parse_real(total_time);
        if (!(t > 0.0)) {
            throw InvalidArgument("--T must be positive");
        }
        if (!(epsilon0 > 0.0)) {
            throw InvalidArgument("--epsilon0 must be positive");
        }
        Json doc;
        doc["command"] = "verify";
        const double tol = tolerance(g, 5e-2);
        if (!program.empty() || !gate.empty()) {
            if (!program.empty() && !gate.empty()) {
                throw InvalidArgument("give either --program or --gate");
            }
            const GateProgram p = !gate.empty() ? two_qubit_gate(parse_named_gate(gate))
                                                : io::program_from_json(io::load_json_argument(program));
            const ProgramVerification v = verify_program({p.n, epsilon0}, p, t, steps);
            doc["kind"] = "program";
            doc["program"] = io::program_to_json(p);
            doc["transport"] = io::matrix_to_json(v.transport.matrix());
            doc["closed_form"] = io::matrix_to_json(v.closed_form.matrix());
            doc["leakage"] = v.leakage;
            doc["max_leakage"] = v.max_leakage;
            doc["distance_to_holonomy"] = v.distance;
            doc["T"] = t;
            doc["steps"] = v.steps;
            doc["loops"] = v.loops;
            doc["pass"] = v.distance < tol;
            return render_json(doc, resolve_format(g, Format::json));
        }
        const auto r = spec.resolve(g);
        const Schedule sched{r.loop, t, Ramp::smoothstep, steps};
        const TransportReport rep = adiabatic_transport({r.n, epsilon0}, sched);
        doc["kind"] = "loop";
        doc["transport"] = io::matrix_to_json(rep.transport.matrix());
        doc["holonomy"] = io::matrix_to_json(holonomy(r.loop, 256).matrix());
        doc["leakage"] = rep.leakage;
        doc["max_leakage"] = rep.max_leakage;
        doc["distance_to_holonomy"] = rep.distance_to_holonomy;
        doc["T"] = t;
        doc["steps"] = rep.steps;
        doc["adiabatic"] = rep.adiabatic;
        doc["pass"] = rep.distance_to_holonomy < tol;
        return render_json(doc, resolve_format(g, Format::json));
    }
};

// ---------------------------------------------------------------- kick

struct KickCmd {
    LoopSpec spec;
    std::string total_time = "20";
    std::string intervals = "250,500,1000";
    int reference_steps = 200000;
    double epsilon0 = 1.0;

    void add_to(CLI::App* app) {
        spec.add_to(app);
        app->add_option("--T", total_time, "total time in units of 1/eps0");
        app->add_option("--N", intervals, "comma-separated interval counts");
        app->add_option("--reference-steps", reference_steps, "steps of the continuous reference");
        app->add_option("--epsilon0", epsilon0, "energy gap");
    }

    std::string run(const Globals& g) const {
        const double t = io::parse_real(total_time);
        if (!(t > 0.0)) {
            throw InvalidArgument("--T must be positive");
        }
        const std::vector<int> ns = io::parse_int_list(intervals);
        if (ns.empty()) {
            throw InvalidArgument("--N needs at least one interval count");
        }
        for (int n : ns) {
            if (n < 1) throw InvalidArgument("interval counts must be positive");
        }
        if (reference_steps < 1) {
            throw InvalidArgument("--reference-steps must be positive");
        }
        const auto r = spec.resolve(g);
        const HamiltonianFamily f{r.n, epsilon0};
        const Schedule sched{r.loop, t, Ramp::smoothstep, 0};
        const Matrix reference = continuous_propagator(f, sched, reference_steps).matrix();
        Table table{{"N", "delta_t", "distance"}, {}};
        for (int n : ns) {
            const Matrix k = kick_evolution(f, make_kick_plan(sched, n)).matrix();
            table.rows.push_back({Json(n), Json(t / n), Json(linalg::operator_norm(k - reference))});
        }
        Json meta;
        meta["command"] = "kick";
        meta["T"] = t;
        meta["reference_steps"] = reference_steps;
        return render_table(table, resolve_format(g, Format::csv), meta);
    }
};

// ---------------------------------------------------------------- circuit

struct CircuitCmd {
    int qubits = 0;
    std::string ancilla = "+";
    std::string state;
    std::string circuit;

    void add_to(CLI::App* app) {
        app->add_option("--qubits", qubits, "register size (defaults to --n, else 2)");
        app->add_option("--ancilla", ancilla, "code selector + or -");
        app->add_option("--state", state, "input basis label, qubit 1 first (default all zeros)");
        app->add_option("--circuit", circuit, "circuit JSON (inline or file path)")->required();
    }

    std::string run(const Globals& g) const {
        const int k = qubits > 0 ? qubits : (g.n > 0 ? g.n : 2);
        const Register reg{k, parse_ancilla(ancilla), 1.0};
        reg.validate();
        const std::string label = state.empty() ? std::string(k, '0') : state;
        const std::vector<CircuitGate> gates = io::circuit_from_json(io::load_json_argument(circuit));
        const Vector out = run_circuit(reg, gates, basis_state(reg, label));
        const CostReport cost = gate_count(k, gates);

        Json doc;
        doc["command"] = "circuit";
        doc["qubits"] = k;
        doc["ancilla"] = to_string(reg.sign);
        doc["input"] = label;
        doc["state"] = io::state_to_json(out);
        Json support = Json::array();
        for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
            if (std::abs(out(idx)) < 1e-12) continue;
            std::string bits;
            for (int q = k; q >= 1; --q) bits += ((idx >> q) & 1) ? '1' : '0';
            bits += (idx & 1) ? '+' : '-';
            support.push_back({{"basis", bits}, {"amplitude", io::complex_to_json(out(idx))}});
        }
        doc["support"] = std::move(support);
        doc["cost"] = {{"gates", cost.gates},
                       {"local_per_gate", cost.local_per_gate},
                       {"local_total", cost.local_total},
                       {"monolithic_total", cost.monolithic_total},
                       {"monolithic_dimension", cost.monolithic_dimension}};
        return render_json(doc, resolve_format(g, Format::json));
    }
};

// ---------------------------------------------------------------- sweep

struct SweepCmd {
    std::string kind;
    LoopSpec spec;
    std::string times = "200,2000";
    std::string segment_list = "8,16,32,64,128";
    int count = 20;

    void add_to(CLI::App* app) {
        app->add_option("kind", kind, "adiabatic, segments or compile")->required();
        spec.add_to(app);
        app->add_option("--T", times, "adiabatic: comma-separated total times");
        app->add_option("--segments", segment_list, "segments: comma-separated segments per edge");
        app->add_option("--count", count, "compile: number of random targets");
    }

    LoopSpec default_spec() const {
        if (!spec.loop.empty() || spec.has_step()) return spec;
        LoopSpec s;
        s.family = "C1";
        s.beta = 1;
        s.area = "pi/4";
        return s;
    }

    std::string run(const Globals& g) const {
        Json meta;
        meta["command"] = "sweep";
        meta["kind"] = kind;
        Table table;
        if (kind == "adiabatic") {
            const auto r = default_spec().resolve(g);
            table.columns = {"T", "steps", "distance", "max_leakage"};
            for (double t : io::parse_real_list(times)) {
                const TransportReport rep = adiabatic_transport({r.n, 1.0}, {r.loop, t, Ramp::smoothstep, 0});
                table.rows.push_back({Json(t), Json(rep.steps), Json(rep.distance_to_holonomy), Json(rep.max_leakage)});
            }
        } else if (kind == "segments") {
            const LoopSpec s = default_spec();
            const GateStep step = s.step();
            const auto r = s.resolve(g);
            const Matrix closed = primitive_holonomy(step, r.n).matrix();
            table.columns = {"segments", "distance"};
            for (int segs : io::parse_int_list(segment_list)) {
                table.rows.push_back({Json(segs), Json(linalg::max_abs(holonomy(r.loop, segs).matrix() - closed))});
            }
        } else if (kind == "compile") {
            if (count < 0) {
                throw InvalidArgument("--count must be non-negative");
            }
            const int dim = g.n > 0 ? g.n : 2;
            std::mt19937_64 rng(g.seed);
            meta["seed"] = g.seed;
            meta["dim"] = dim;
            table.columns = {"index", "steps", "distance"};
            for (int i = 0; i < count; ++i) {
                const Compilation c = compile_unitary(linalg::random_unitary(dim, rng));
                table.rows.push_back({Json(i), Json(c.program.steps.size()), Json(c.distance)});
            }
        } else {
            throw InvalidArgument("unknown sweep kind '" + kind + "'");
        }
        return render_table(table, resolve_format(g, Format::csv), meta);
    }
};

void emit(const Globals& g, const std::string& text, std::ostream& out) {
    if (g.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
        throw InvalidArgument("cannot write '" + g.out + "'");
    }
    file << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holonomic quantum computation toolkit on CP^n", "hqc"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--n", g.n, "number of code levels (commands infer it when omitted)");
    app.add_option("--tol", g.tol, "pass/fail tolerance override");
    app.add_option("--seed", g.seed, "seed for randomized sweeps");
    app.add_option("--out", g.out, "write the result to this file");
    app.add_option("--format", g.format, "json or csv");

    ConnectionCmd connection;
    HolonomyCmd holonomy_cmd;
    GateCmd gate;
    CompileCmd compile;
    VerifyCmd verify;
    KickCmd kick;
    CircuitCmd circuit;
    SweepCmd sweep;
    connection.add_to(app.add_subcommand("connection", "dump the connection at a point"));
    holonomy_cmd.add_to(app.add_subcommand("holonomy", "path-ordered holonomy of a loop"));
    gate.add_to(app.add_subcommand("gate", "named two-qubit program or compiled target, with fidelity"));
    compile.add_to(app.add_subcommand("compile", "compile a unitary into a loop program"));
    verify.add_to(app.add_subcommand("verify", "adiabatic oracle for a loop or program"));
    kick.add_to(app.add_subcommand("kick", "kick-scheme convergence table"));
    circuit.add_to(app.add_subcommand("circuit", "run a local-gate circuit on a register"));
    sweep.add_to(app.add_subcommand("sweep", "parameter sweeps"));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        std::string text;
        const std::string name = app.get_subcommands().front()->get_name();
        if (name == "connection") text = connection.run(g);
        else if (name == "holonomy") text = holonomy_cmd.run(g);
        else if (name == "gate") text = gate.run(g);
        else if (name == "compile") text = compile.run(g);
        else if (name == "verify") text = verify.run(g);
        else if (name == "kick") text = kick.run(g);
        else if (name == "circuit") text = circuit.run(g);
        else text = sweep.run(g);
        emit(g, text, out);
        return kExitOk;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "malformed JSON: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

} // namespace hqc::cli
