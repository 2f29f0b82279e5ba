#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bnalg/constraints.hpp"
#include "bnalg/dimension.hpp"
#include "bnalg/errors.hpp"
#include "bnalg/network.hpp"
#include "bnalg/parameters.hpp"
#include "bnalg/table.hpp"
#include "json.hpp"

namespace {

using namespace bnalg;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write file: " + path);
    out << payload;
    if (!out) throw ParseError("cannot write file: " + path);
}

// Write-then-rename so concurrent readers never see a torn file.
void write_file_atomic(const std::string& path, const std::string& payload) {
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    write_file(tmp, payload);
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw ParseError("cannot write file: " + path);
    }
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        write_file(out_path, payload);
    }
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(csv);
    while (std::getline(in, part, ',')) parts.push_back(part);
    return parts;
}

std::vector<std::uint64_t> parse_seeds(const std::string& csv) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split_csv(csv)) {
        try {
            std::size_t used = 0;
            seeds.push_back(std::stoull(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ParseError("invalid seed \"" + part + "\"");
        }
    }
    if (seeds.empty()) throw ParseError("at least one seed is required");
    return seeds;
}

std::vector<int> node_indices(const NetworkSpec& net, const std::string& csv) {
    std::vector<int> indices;
    for (const auto& name : split_csv(csv)) {
        const int idx = net.index_of(name);
        if (idx < 0) throw ParseError("unknown node \"" + name + "\"");
        indices.push_back(idx);
    }
    return indices;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

struct ConstraintArgs {
    std::string net_path;
    std::string family;
    std::string a, b, c;
    std::string out_path;
    std::string cache_flag;
    bool conjectural = false;
};

ConstraintSet generate_constraints(const NetworkSpec& net, const ConstraintArgs& args) {
    const Family family = family_from_string(args.family);
    switch (family) {
        case Family::kCiMinors: {
            if (args.a.empty() || args.b.empty()) {
                throw ParseError("CI_MINORS requires --a and --b node lists");
            }
            CIStatement stmt{node_indices(net, args.a), node_indices(net, args.b),
                             args.c.empty() ? std::vector<int>{} : node_indices(net, args.c)};
            return ci_minor_ideal(net, stmt);
        }
        case Family::kNb2Flattening: {
            const auto nb = detect_naive_bayes(net);
            if (!nb) {
                throw ShapeError("NB2_FLATTENING requires a naive Bayes network "
                                 "(one parentless hidden class node, features hanging off it)");
            }
            return nb2_flattening_constraints(*nb);
        }
        case Family::kQuadratic51: return quadratic_family_constraints(net);
        case Family::kCubic52: return cubic_family_constraints(net);
        case Family::kSextic53: return sextic_family_constraints(net, args.conjectural);
    }
    throw ParseError("unknown constraint family");
}

int cmd_constraints(const ConstraintArgs& args) {
    const std::string net_bytes = read_file(args.net_path);
    const NetworkSpec net = parse_network(net_bytes);

    std::string cache_dir = args.cache_flag;
    if (const char* env = std::getenv("BNALG_CACHE"); env != nullptr && *env != '\0') {
        cache_dir = env;
    }
    std::string cache_path;
    std::string payload;
    std::optional<ConstraintSet> cs;
    if (!cache_dir.empty()) {
        const std::string key = net_bytes + '\0' + args.family + '\0' + args.a + '\0' + args.b +
                                '\0' + args.c + '\0' + (args.conjectural ? "1" : "0");
        cache_path = cache_dir + "/" + fnv1a_hex(key) + ".json";
        if (std::filesystem::exists(cache_path)) {
            try {
                payload = read_file(cache_path);
                cs = parse_constraint_set(payload);
            } catch (const std::exception&) {
                cs.reset();  // corrupted cache entry: regenerate below
                payload.clear();
            }
        }
    }
    if (!cs) {
        cs = generate_constraints(net, args);
        payload = serialize(*cs);
        if (!cache_dir.empty()) {
            std::filesystem::create_directories(cache_dir);
            write_file_atomic(cache_path, payload);
        }
    }
    if (cs->polys.empty()) {
        std::cerr << "warning: constraint family " << args.family
                  << " is empty for this network shape\n";
    }
    emit(args.out_path, payload);
    return 0;
}

int cmd_dim(const std::string& net_path, const std::string& seed_csv, double tol) {
    const NetworkSpec net = parse_network(read_file(net_path));
    const auto seeds = parse_seeds(seed_csv);
    const DimensionReport report = dimension_report(net, seeds, tol);
    std::cout << serialize(report);
    return 0;
}

int cmd_check(const std::string& cs_path, const std::string& table_path, const std::string& mode,
              double tol) {
    const ConstraintSet cs = parse_constraint_set(read_file(cs_path));
    VanishingReport report;
    if (mode == "rational") {
        report = check_vanishing(cs, parse_table_rational(read_file(table_path)));
    } else if (mode == "float") {
        report = check_vanishing(cs, parse_table_float(read_file(table_path)), tol);
    } else {
        throw ParseError("mode must be \"rational\" or \"float\"");
    }
    std::cout << serialize(report);
    return report.all_vanish ? 0 : 1;
}

int cmd_sample(const std::string& net_path, const std::string& seed_csv, const std::string& mode,
               const std::string& out_path) {
    const NetworkSpec net = parse_network(read_file(net_path));
    const auto seeds = parse_seeds(seed_csv);
    const Table<Rational> table = sample_observable(net, seeds.front());
    std::string payload;
    if (mode == "rational") {
        payload = serialize(table);
    } else if (mode == "float") {
        payload = serialize(to_double(table));
    } else {
        throw ParseError("mode must be \"rational\" or \"float\"");
    }
    emit(out_path, payload);
    return 0;
}

int cmd_classify(const std::vector<long long>& params) {
    if (params.size() < 3) {
        throw ParseError("classify needs a class count and at least two feature cardinalities");
    }
    for (long long v : params) {
        if (v < 2 || v > 1000000) throw ParseError("cardinalities must be integers in [2, 1e6]");
    }
    const NaiveBayesSpec nb(static_cast<int>(params[0]),
                            std::vector<int>(params.begin() + 1, params.end()));
    const auto detail = classify_catalisano_detail(nb);
    nlohmann::ordered_json doc;
    doc["format"] = "bnalg-v1";
    doc["r"] = nb.r;
    doc["features"] = nb.features;
    doc["classification"] = to_string(detail.classification);
    doc["expected"] = expected_dimension(nb);
    doc["dp_bound"] = dp_bound(nb);
    if (detail.value) doc["value"] = *detail.value;
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_dsep(const std::string& net_path, const std::string& a, const std::string& b,
             const std::string& c) {
    const NetworkSpec net = parse_network(read_file(net_path));
    CIStatement stmt{node_indices(net, a), node_indices(net, b),
                     c.empty() ? std::vector<int>{} : node_indices(net, c)};
    validate_statement(net, stmt);
    nlohmann::ordered_json doc;
    doc["format"] = "bnalg-v1";
    auto names = [&](const std::vector<int>& block) {
        std::vector<std::string> out;
        for (int idx : block) out.push_back(net.node(idx).name);
        return out;
    };
    doc["a"] = names(stmt.a);
    doc["b"] = names(stmt.b);
    doc["c"] = names(stmt.c);
    doc["d_separated"] = d_separated(net, stmt);
    std::cout << doc.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic toolkit for discrete Bayesian networks with hidden variables"};
    app.require_subcommand(1);

    std::string net_path, seed_csv = "1,2,3", mode = "rational", out_path;
    double tol = 1e-9;

    auto* dim = app.add_subcommand("dim", "Dimension report for a network");
    dim->add_option("net", net_path, "network JSON file")->required();
    dim->add_option("--seed", seed_csv, "comma-separated sampling seeds");
    dim->add_option("--tol", tol, "numeric rank threshold (relative)");

    ConstraintArgs cargs;
    auto* cons = app.add_subcommand("constraints", "Generate a constraint family");
    cons->add_option("net", cargs.net_path, "network JSON file")->required();
    cons->add_option("--family", cargs.family, "CI_MINORS|NB2_FLATTENING|QUADRATIC_5_1|CUBIC_5_2|SEXTIC_5_3")
        ->required();
    cons->add_option("--a", cargs.a, "CI_MINORS: comma-separated A-block node names");
    cons->add_option("--b", cargs.b, "CI_MINORS: comma-separated B-block node names");
    cons->add_option("--c", cargs.c, "CI_MINORS: comma-separated conditioning node names");
    cons->add_option("--out", cargs.out_path, "output file (default: stdout)");
    cons->add_option("--cache", cargs.cache_flag, "cache directory (BNALG_CACHE overrides)");
    cons->add_flag("--conjectural", cargs.conjectural,
                   "SEXTIC_5_3: emit the unverified general-first-variable extension");

    std::string cs_path, table_path;
    auto* check = app.add_subcommand("check", "Evaluate constraints against a table");
    check->add_option("constraints", cs_path, "constraint set JSON file")->required();
    check->add_option("table", table_path, "table JSON file")->required();
    check->add_option("--mode", mode, "rational|float");
    check->add_option("--tol", tol, "float-mode vanishing tolerance");

    auto* sample = app.add_subcommand("sample", "Sample an observable distribution");
    sample->add_option("net", net_path, "network JSON file")->required();
    sample->add_option("--seed", seed_csv, "sampling seed (first entry used)");
    sample->add_option("--mode", mode, "rational|float");
    sample->add_option("--out", out_path, "output file (default: stdout)");

    std::vector<long long> classify_params;
    auto* classify = app.add_subcommand("classify", "Classify a naive Bayes model");
    classify->add_option("params", classify_params, "r r_1 r_2 [... r_n]")->required()->expected(-1);

    std::string a_csv, b_csv, c_csv;
    auto* dsep = app.add_subcommand("dsep", "Test d-separation A _||_ B | C");
    dsep->add_option("net", net_path, "network JSON file")->required();
    dsep->add_option("--a", a_csv, "comma-separated A-block node names")->required();
    dsep->add_option("--b", b_csv, "comma-separated B-block node names")->required();
    dsep->add_option("--c", c_csv, "comma-separated conditioning node names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(dim)) return cmd_dim(net_path, seed_csv, tol);
        if (app.got_subcommand(cons)) return cmd_constraints(cargs);
        if (app.got_subcommand(check)) return cmd_check(cs_path, table_path, mode, tol);
        if (app.got_subcommand(sample)) return cmd_sample(net_path, seed_csv, mode, out_path);
        if (app.got_subcommand(classify)) return cmd_classify(classify_params);
        if (app.got_subcommand(dsep)) return cmd_dsep(net_path, a_csv, b_csv, c_csv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BackendDisagreement& e) {
        std::cerr << "error: " << e.what() << " (exact " << e.exact_value << ", numeric "
                  << e.numeric_value << ")\n";
        return 3;
    } catch (const ShapeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
