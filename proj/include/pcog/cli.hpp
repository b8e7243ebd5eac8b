#pragma once

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcog/characterize.hpp"
#include "pcog/core.hpp"
#include "pcog/error.hpp"
#include "pcog/game.hpp"
#include "pcog/io.hpp"
#include "pcog/reductions.hpp"

namespace pcog::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kPrecondition = 3 };

namespace detail {

inline std::string join(const std::vector<std::string>& items, const char* sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::string edge_list(const std::vector<Edge>& es) {
    std::vector<std::string> keys;
    for (const auto& e : es) keys.push_back(e.key());
    return join(keys);
}

inline void print_witness(std::ostream& out, const std::string& prefix, const OptResult& r) {
    out << prefix << "witness_vertices=" << join(r.witness_vertices) << "\n";
    out << prefix << "witness_edges=" << edge_list(r.witness_edges) << "\n";
}

inline void print_generated(std::ostream& out, const GeneratedInstance& gen, const std::string& out_path,
                            const std::string& alloc_path) {
    out << "expected=" << (gen.expected ? "true" : "false") << "\n";
    out << "provenance=" << gen.provenance << "\n";
    out << "agents=" << gen.instance.num_agents() << "\n";
    out << "vertices=" << gen.instance.graph.num_vertices() << "\n";
    out << "edges=" << gen.instance.graph.num_edges() << "\n";
    out << "instance=" << io::compact(io::instance_to_json(gen.instance)) << "\n";
    if (gen.allocation) out << "allocation=" << io::compact(io::allocation_to_json(*gen.allocation)) << "\n";
    if (!out_path.empty()) io::write_file(out_path, io::pretty(io::instance_to_json(gen.instance)));
    if (!alloc_path.empty()) {
        if (!gen.allocation) throw InputError("this instance comes without an allocation");
        io::write_file(alloc_path, io::pretty(io::allocation_to_json(*gen.allocation)));
    }
}

inline Game load_game(const std::string& path) {
    auto inst = io::load_instance(path);
    return Game(std::move(inst));
}

}  // namespace detail

/// Parses `argv`, runs one subcommand, writes key=value lines to `out` and
/// diagnostics to `err`. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partitioned combinatorial optimization games: values, core verification and existence"};
    app.require_subcommand(1);

    std::string inst_path, alloc_path, cert_path, method = "full", coalition_arg, emit_cert;
    std::string out_path, alloc_out_path, f1_path, f2_path, graph_path, vertex, example_id;

    auto* value = app.add_subcommand("value", "coalition value or cost");
    value->add_option("instance", inst_path, "instance JSON")->required();
    value->add_option("--coalition", coalition_arg, "comma-separated agent ids (empty for the empty coalition)");

    auto* validate_cmd = app.add_subcommand("validate", "list instance rule violations");
    validate_cmd->add_option("instance", inst_path)->required();

    auto* verify = app.add_subcommand("verify", "core-stability verification");
    verify->add_option("instance", inst_path)->required();
    verify->add_option("allocation", alloc_path)->required();

    auto* core = app.add_subcommand("core", "core existence");
    core->add_option("instance", inst_path)->required();
    core->add_option("--method", method, "full | cut")->check(CLI::IsMember({"full", "cut"}));
    core->add_option("--emit-cert", emit_cert, "write the emptiness certificate here when the core is empty");

    auto* ir = app.add_subcommand("ir", "individually rational allocation");
    ir->add_option("instance", inst_path)->required();

    auto* bird = app.add_subcommand("bird", "Bird allocation for spanning tree games");
    bird->add_option("instance", inst_path)->required();

    auto* frac = app.add_subcommand("fractional-ds", "fractional versus integer domination number");
    frac->add_option("instance", inst_path)->required();

    auto* check_cert = app.add_subcommand("check-cert", "validate an emptiness certificate");
    check_cert->add_option("instance", inst_path)->required();
    check_cert->add_option("certificate", cert_path)->required();

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto add_outputs = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the instance JSON here");
        cmd->add_option("--alloc-out", alloc_out_path, "write the attached allocation here");
    };
    auto* gen_sat = gen->add_subcommand("sat-unsat", "one-agent dominating set verification gadget");
    gen_sat->add_option("f1", f1_path)->required();
    gen_sat->add_option("f2", f2_path)->required();
    add_outputs(gen_sat);
    auto* gen_vc = gen->add_subcommand("vc-member", "vertex cover membership gadget");
    gen_vc->add_option("graph", graph_path)->required();
    gen_vc->add_option("vertex", vertex)->required();
    add_outputs(gen_vc);
    auto* gen_ds = gen->add_subcommand("ds-member", "dominating set membership gadget");
    gen_ds->add_option("graph", graph_path)->required();
    gen_ds->add_option("vertex", vertex)->required();
    add_outputs(gen_ds);
    auto* gen_ex = gen->add_subcommand("example", "worked example instance");
    gen_ex->add_option("id", example_id, "1g1 1g2 2g1 2g2 3 4g1 4g2")->required();
    add_outputs(gen_ex);

    auto* reduce = app.add_subcommand("reduce", "instance reductions");
    reduce->require_subcommand(1);
    auto* vc2ds = reduce->add_subcommand("vc-to-ds", "vertex cover game to dominating set game");
    vc2ds->add_option("instance", inst_path)->required();
    vc2ds->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    try {
        if (*validate_cmd) {
            const auto problems = validate(io::load_instance(inst_path));
            out << "valid=" << (problems.empty() ? "true" : "false") << "\n";
            out << "violations=" << detail::join(problems, ";") << "\n";
            return problems.empty() ? kOk : kPrecondition;
        }
        if (*value) {
            const Game game = detail::load_game(inst_path);
            const auto members = detail::split_commas(coalition_arg);
            const Coalition s = make_coalition(game.instance().ownership, members);
            const auto r = game.solve_coalition(s);
            out << "goal=" << goal_name(game.goal()) << "\n";
            out << "coalition=" << detail::join(s.members(game.instance().ownership)) << "\n";
            out << "value=" << to_string(r.value) << "\n";
            detail::print_witness(out, "", r);
            return kOk;
        }
        if (*verify) {
            const Game game = detail::load_game(inst_path);
            const auto alloc = io::load_allocation(alloc_path);
            const auto rep = verify_core(game, alloc);
            out << "verdict=" << verdict_name(rep.verdict) << "\n";
            out << "grand_value=" << to_string(rep.grand_value) << "\n";
            out << "allocated_total=" << to_string(rep.allocated_total) << "\n";
            if (rep.blocking) {
                const auto& b = *rep.blocking;
                out << "blocking_coalition=" << detail::join(b.coalition.members(game.instance().ownership)) << "\n";
                out << "blocking_value=" << to_string(b.value) << "\n";
                out << "blocking_allocated=" << to_string(b.allocated) << "\n";
                detail::print_witness(out, "blocking_", b.witness);
            }
            return kOk;
        }
        if (*core) {
            const Game game = detail::load_game(inst_path);
            const auto rep = method == "cut" ? core_existence_cutting_plane(game) : core_existence_full_lp(game);
            out << "verdict=" << verdict_name(rep.verdict) << "\n";
            out << "method=" << method_name(rep.method) << "\n";
            out << "oracle_calls=" << rep.oracle_calls << "\n";
            out << "lp_coalition_rows=" << rep.lp_rows << "\n";
            out << "grand_value=" << to_string(game.grand_value()) << "\n";
            if (rep.allocation) out << "allocation=" << io::compact(io::allocation_to_json(*rep.allocation)) << "\n";
            if (rep.certificate) {
                const auto cj = io::certificate_to_json(game, *rep.certificate);
                out << "certificate=" << io::compact(cj) << "\n";
                out << "certificate_valid=" << (check_emptiness_certificate(game, *rep.certificate) ? "true" : "false")
                    << "\n";
                if (!emit_cert.empty()) io::write_file(emit_cert, io::pretty(cj));
            }
            return kOk;
        }
        if (*ir) {
            const Game game = detail::load_game(inst_path);
            const auto a = ir_allocation(game);
            out << "allocation=" << io::compact(io::allocation_to_json(a)) << "\n";
            out << "pre_imputation=" << (is_pre_imputation(game, a) ? "true" : "false") << "\n";
            return kOk;
        }
        if (*bird) {
            const Game game = detail::load_game(inst_path);
            const auto payments = bird_vertex_payments(game.instance());
            const auto a = bird_allocation(game);
            out << "vertex_payments=" << io::compact(io::allocation_to_json(payments)) << "\n";
            out << "allocation=" << io::compact(io::allocation_to_json(a)) << "\n";
            out << "verdict=" << verdict_name(verify_core(game, a).verdict) << "\n";
            return kOk;
        }
        if (*frac) {
            const auto inst = io::load_instance(inst_path);
            require_valid(inst);
            const auto rep = fractional_ds_value(inst.graph);
            out << "fractional_value=" << to_string(rep.fractional_value) << "\n";
            out << "integer_value=" << to_string(rep.integer_value) << "\n";
            out << "equal=" << (rep.equal ? "true" : "false") << "\n";
            out << "lp_point=" << io::compact(io::rationals_to_json(inst.graph.vertices(), rep.lp_point)) << "\n";
            return kOk;
        }
        if (*check_cert) {
            const Game game = detail::load_game(inst_path);
            const auto cert = io::certificate_from_json(game, io::parse_json(io::read_file(cert_path)));
            out << "valid=" << (check_emptiness_certificate(game, cert) ? "true" : "false") << "\n";
            return kOk;
        }
        if (*gen_sat) {
            const auto f1 = parse_cnf(io::read_file(f1_path));
            const auto f2 = parse_cnf(io::read_file(f2_path));
            detail::print_generated(out, gen_sat_unsat_pdsg_cv(f1, f2), out_path, alloc_out_path);
            return kOk;
        }
        if (*gen_vc || *gen_ds) {
            const auto g = io::load_graph(graph_path);
            const auto gi = *gen_vc ? gen_vc_membership_pvcg_ce(g, vertex) : gen_ds_membership_pdsg_ce(g, vertex);
            detail::print_generated(out, gi, out_path, alloc_out_path);
            return kOk;
        }
        if (*gen_ex) {
            const auto ex = paper_example(example_id);
            out << "id=" << example_id << "\n";
            out << "instance=" << io::compact(io::instance_to_json(ex.instance)) << "\n";
            if (ex.allocation) out << "allocation=" << io::compact(io::allocation_to_json(*ex.allocation)) << "\n";
            if (!out_path.empty()) io::write_file(out_path, io::pretty(io::instance_to_json(ex.instance)));
            if (!alloc_out_path.empty()) {
                if (!ex.allocation) throw InputError("example " + example_id + " has no canonical allocation");
                io::write_file(alloc_out_path, io::pretty(io::allocation_to_json(*ex.allocation)));
            }
            return kOk;
        }
        if (*vc2ds) {
            const auto reduced = reduce_pvcg_to_pdsg(io::load_instance(inst_path));
            out << "agents=" << reduced.num_agents() << "\n";
            out << "vertices=" << reduced.graph.num_vertices() << "\n";
            out << "edges=" << reduced.graph.num_edges() << "\n";
            out << "instance=" << io::compact(io::instance_to_json(reduced)) << "\n";
            if (!out_path.empty()) io::write_file(out_path, io::pretty(io::instance_to_json(reduced)));
            return kOk;
        }
    } catch (const ParseError& e) {
        err << "format error: " << e.what() << "\n";
        return kUsage;
    } catch (const InputError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const InfeasibleError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const nlohmann::json::exception& e) {
        err << "format error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace pcog::cli
