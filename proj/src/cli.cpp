#include <berezin/cli.hpp>

#include <berezin/coherent.hpp>
#include <berezin/duality.hpp>
#include <berezin/hilbert.hpp>
#include <berezin/io.hpp>
#include <berezin/semiclassical.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <utility>

namespace berezin {

namespace {

double parse_number(const std::string& text) {
    if (text.empty()) throw UsageError("empty numeric value");
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw UsageError("cannot parse number '" + text + "'");
    return value;
}

/// Accepts "0.25" as well as "1/4".
double parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_number(text);
    const double numerator = parse_number(text.substr(0, slash));
    const double denominator = parse_number(text.substr(slash + 1));
    if (denominator == 0.0) throw UsageError("zero denominator in '" + text + "'");
    return numerator / denominator;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    return parts;
}

Complex parse_complex_value(const std::string& text) {
    const auto parts = split_commas(text);
    if (parts.size() == 1) return Complex(parse_number(parts[0]), 0.0);
    if (parts.size() == 2) return Complex(parse_number(parts[0]), parse_number(parts[1]));
    throw UsageError("complex value '" + text + "' needs the form re or re,im");
}

std::pair<Complex, Complex> parse_pair_value(const std::string& text) {
    const auto parts = split_commas(text);
    if (parts.size() == 2)
        return {Complex(parse_number(parts[0]), 0.0), Complex(parse_number(parts[1]), 0.0)};
    if (parts.size() == 4)
        return {Complex(parse_number(parts[0]), parse_number(parts[1])),
                Complex(parse_number(parts[2]), parse_number(parts[3]))};
    throw UsageError("pair '" + text + "' needs two components u,v or four components ur,ui,vr,vi");
}

std::string complex_arg(Complex value) {
    if (value.imag() == 0.0) return format_double(value.real());
    return format_double(value.real()) + "," + format_double(value.imag());
}

std::string pair_arg(const std::pair<Complex, Complex>& pair) {
    if (pair.first.imag() == 0.0 && pair.second.imag() == 0.0)
        return format_double(pair.first.real()) + "," + format_double(pair.second.real());
    return format_double(pair.first.real()) + "," + format_double(pair.first.imag()) + "," +
           format_double(pair.second.real()) + "," + format_double(pair.second.imag());
}

MoebiusMap parse_map(const std::string& name, int weight) {
    if (name == "identity") return MoebiusMap::identity(weight);
    if (name == "S") return MoebiusMap::duality_s(weight);
    const std::string translation_prefix = "translation:";
    const std::string scaling_prefix = "scaling:";
    if (name.rfind(translation_prefix, 0) == 0)
        return MoebiusMap::translation(parse_number(name.substr(translation_prefix.size())), weight);
    if (name.rfind(scaling_prefix, 0) == 0)
        return MoebiusMap::scaling(parse_number(name.substr(scaling_prefix.size())), weight);
    if (name.find(',') != std::string::npos) {
        const auto parts = split_commas(name);
        if (parts.size() != 4)
            throw UsageError("matrix map '" + name + "' needs four entries a,b,c,d");
        return MoebiusMap(parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]),
                          parse_number(parts[3]), weight);
    }
    throw UsageError("unknown map '" + name +
                     "' (expected identity, S, translation:<b>, scaling:<a> or a,b,c,d)");
}

SpaceKind resolve_space(const std::string& name) {
    SpaceKind kind;
    try {
        kind = space_kind_from_string(name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (kind == SpaceKind::Custom)
        throw std::invalid_argument("custom spaces are available through the library API only");
    return kind;
}

PhaseSpace model_space(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::Plane: return PhaseSpace::plane();
        case SpaceKind::Sphere: return PhaseSpace::sphere();
        case SpaceKind::Disc: return PhaseSpace::disc();
        case SpaceKind::Custom: break;
    }
    throw std::invalid_argument("custom spaces are available through the library API only");
}

void check_model_constraints(SpaceKind kind, double inv_hbar) {
    if (!(inv_hbar > 0.0) || !std::isfinite(inv_hbar))
        throw std::invalid_argument("1/hbar must be positive");
    if (kind == SpaceKind::Sphere && std::abs(inv_hbar - std::round(inv_hbar)) > 1e-9)
        throw std::invalid_argument("1/hbar must be an integer for the sphere space");
    if (kind == SpaceKind::Disc && !(inv_hbar > 1.0))
        throw std::invalid_argument("disc space requires 1/hbar > 1");
}

int sphere_degree(double inv_hbar) { return static_cast<int>(std::round(inv_hbar)); }

void resolve_defaults(ExperimentConfig& config) {
    const bool sphere = config.space == SpaceKind::Sphere;
    const int cutoff = sphere ? sphere_degree(config.inv_hbar) : 0;
    if (config.command == "gram" && config.max_degree < 0)
        config.max_degree = sphere ? std::min(10, cutoff) : 10;
    if (config.command == "kernel" && config.max_degree < 0)
        config.max_degree = sphere ? cutoff : 40;
    if (config.command == "resolution" && config.max_degree < 0) {
        if (config.space == SpaceKind::Plane)
            config.max_degree = 10;
        else if (sphere)
            config.max_degree = cutoff;
        else
            config.max_degree = 8;
    }
    if ((config.command == "coherent" || config.command == "duality") && config.truncation < 0)
        config.truncation = sphere ? cutoff : 40;
}

JsonValue make_document(const ExperimentConfig& config) {
    JsonValue doc = JsonValue::object();
    doc.set("schema", JsonValue::string("berezin-kit/1"));
    doc.set("command", JsonValue::string(config.command));
    doc.set("space", JsonValue::string(to_string(config.space)));
    return doc;
}

std::string run_gram(const ExperimentConfig& config) {
    InnerProductSpec spec = InnerProductSpec::make(model_space(config.space), config.inv_hbar,
                                                   config.max_degree, config.tolerance);
    GramMatrix gram = gram_matrix(spec, config.max_degree);
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("max_degree", JsonValue::number(config.max_degree));
    JsonValue diagonal = JsonValue::array();
    for (int m = 0; m <= config.max_degree; ++m) diagonal.push(JsonValue::number(gram.diagonal(m)));
    doc.set("diagonal", std::move(diagonal));
    JsonValue entries = JsonValue::array();
    for (int m = 0; m <= config.max_degree; ++m) {
        JsonValue row = JsonValue::array();
        for (int n = 0; n <= config.max_degree; ++n)
            row.push(JsonValue::complex_pair(gram.entries()(m, n)));
        entries.push(std::move(row));
    }
    doc.set("entries", std::move(entries));
    return doc.dump() + "\n";
}

std::string run_kernel(const ExperimentConfig& config) {
    InnerProductSpec spec = InnerProductSpec::make(model_space(config.space), config.inv_hbar,
                                                   config.max_degree, config.tolerance);
    const Complex z = config.labels.at(0);
    const Complex w = config.labels.at(1);
    const Complex value = reproducing_kernel(spec, z, w, config.max_degree);
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("max_degree", JsonValue::number(config.max_degree));
    doc.set("z", JsonValue::complex_pair(z));
    doc.set("w", JsonValue::complex_pair(w));
    doc.set("value", JsonValue::complex_pair(value));
    return doc.dump() + "\n";
}

std::string run_coherent(const ExperimentConfig& config) {
    InnerProductSpec spec = InnerProductSpec::make(model_space(config.space), config.inv_hbar,
                                                   config.truncation, config.tolerance);
    const Complex label = config.labels.at(0);
    CoherentState state = coherent_state(spec, label, config.truncation);
    const double norm =
        std::sqrt(std::abs(inner_product(spec, state.vector(), state.vector())));
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("label", JsonValue::complex_pair(label));
    doc.set("truncation", JsonValue::number(config.truncation));
    doc.set("norm", JsonValue::number(norm));
    if (config.space == SpaceKind::Plane)
        doc.set("eigen_residual", JsonValue::number(annihilation_eigen_residual(state)));
    JsonValue coefficients = JsonValue::array();
    for (int d = 0; d <= state.vector().truncation_degree(); ++d)
        coefficients.push(JsonValue::complex_pair(state.vector().coefficient(d)));
    doc.set("coefficients", std::move(coefficients));
    return doc.dump() + "\n";
}

std::string run_resolution(const ExperimentConfig& config) {
    InnerProductSpec spec = InnerProductSpec::make(model_space(config.space), config.inv_hbar,
                                                   config.max_degree, config.tolerance);
    const double residual = resolution_of_identity_residual(spec, config.max_degree);
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("max_degree", JsonValue::number(config.max_degree));
    doc.set("residual", JsonValue::number(residual));
    return doc.dump() + "\n";
}

std::string run_dimension(const ExperimentConfig& config) {
    InnerProductSpec spec =
        InnerProductSpec::make(model_space(config.space), config.inv_hbar, 0, config.tolerance);
    const SpaceDimension dim = space_dimension(spec);
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("dimension",
            dim.finite ? JsonValue::number(dim.value) : JsonValue::string("infinite"));
    if (dim.has_stated) {
        doc.set("paper_stated", JsonValue::number(dim.stated));
        if (!dim.finite || dim.stated != dim.value)
            doc.set("note", JsonValue::string("cutoff discrepancy"));
    }
    return doc.dump() + "\n";
}

std::string run_sweep_command(const ExperimentConfig& config) {
    SemiclassicalSweep sweep;
    sweep.space = model_space(config.space);
    sweep.inv_hbar_sequence = config.inv_hbar_list;
    sweep.probe_labels = config.pairs;
    const SweepResult result = run_sweep(sweep);
    if (config.output_format == "csv") {
        std::string csv = "space,inv_hbar,u,v,scaled_log_overlap,diff_to_previous\n";
        for (const SweepRow& row : result.rows) {
            csv += to_string(config.space) + "," + format_double(row.inv_hbar) + "," +
                   format_complex_compact(row.u) + "," + format_complex_compact(row.v) + "," +
                   format_double(row.scaled_log_overlap) + ",";
            if (row.diff_to_previous) csv += format_double(*row.diff_to_previous);
            csv += "\n";
        }
        return csv;
    }
    JsonValue doc = make_document(config);
    JsonValue list = JsonValue::array();
    for (double value : config.inv_hbar_list) list.push(JsonValue::number(value));
    doc.set("inv_hbar_list", std::move(list));
    JsonValue pairs = JsonValue::array();
    for (std::size_t i = 0; i < config.pairs.size(); ++i) {
        JsonValue pair = JsonValue::object();
        pair.set("u", JsonValue::complex_pair(config.pairs[i].first));
        pair.set("v", JsonValue::complex_pair(config.pairs[i].second));
        pair.set("convergent", JsonValue::boolean(result.convergent[i]));
        pairs.push(std::move(pair));
    }
    doc.set("pairs", std::move(pairs));
    JsonValue rows = JsonValue::array();
    for (const SweepRow& row : result.rows) {
        JsonValue item = JsonValue::object();
        item.set("inv_hbar", JsonValue::number(row.inv_hbar));
        item.set("pair_index", JsonValue::number(row.pair_index));
        item.set("u", JsonValue::complex_pair(row.u));
        item.set("v", JsonValue::complex_pair(row.v));
        item.set("scaled_log_overlap", JsonValue::number(row.scaled_log_overlap));
        item.set("diff_to_previous", row.diff_to_previous ? JsonValue::number(*row.diff_to_previous)
                                                          : JsonValue::null());
        rows.push(std::move(item));
    }
    doc.set("rows", std::move(rows));
    return doc.dump() + "\n";
}

std::string run_duality(const ExperimentConfig& config) {
    InnerProductSpec spec = InnerProductSpec::make(PhaseSpace::plane(), config.inv_hbar,
                                                   config.truncation, config.tolerance);
    const MoebiusMap map = parse_map(config.map_name, config.weight);
    const Complex label = config.labels.at(0);
    const DualityReport report = duality_report(spec, map, label, config.truncation);
    JsonValue doc = make_document(config);
    doc.set("inv_hbar", JsonValue::number(config.inv_hbar));
    doc.set("truncation", JsonValue::number(config.truncation));
    doc.set("map", JsonValue::string(config.map_name));
    JsonValue matrix = JsonValue::array();
    JsonValue top = JsonValue::array();
    top.push(JsonValue::number(map.a()));
    top.push(JsonValue::number(map.b()));
    JsonValue bottom = JsonValue::array();
    bottom.push(JsonValue::number(map.c()));
    bottom.push(JsonValue::number(map.d()));
    matrix.push(std::move(top));
    matrix.push(std::move(bottom));
    doc.set("matrix", std::move(matrix));
    doc.set("weight", JsonValue::number(config.weight));
    doc.set("classification", JsonValue::string(to_string(report.classification)));
    doc.set("label", JsonValue::complex_pair(label));
    doc.set("residual", JsonValue::number(report.residual));
    doc.set("baseline_residual", JsonValue::number(report.baseline_residual));
    return doc.dump() + "\n";
}

}

ExperimentConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Numerical toolkit for Berezin quantization over model Kaehler phase\n"
                 "spaces: Gram matrices, reproducing kernels, coherent states,\n"
                 "semiclassical sweeps and Moebius vacuum-change diagnostics."};
    app.name("berezin-cli");
    app.require_subcommand(1);

    std::string space_name;
    std::string inv_hbar_text = "1";
    int max_degree = -1;
    int truncation = -1;
    std::string z_text;
    std::string w_text;
    std::string label_text;
    std::string list_text;
    std::vector<std::string> pair_texts;
    std::string map_name = "identity";
    int weight = 0;
    std::string format = "json";
    std::string output_path;
    double tolerance = 1e-10;

    auto add_output_options = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format: json or csv (csv is sweep-only)")
            ->capture_default_str();
        sub->add_option("--output", output_path, "write the document to this file instead of stdout");
        sub->add_option("--tolerance", tolerance,
                        "target relative error of the quadrature validation")
            ->capture_default_str();
    };
    auto add_space_option = [&](CLI::App* sub) {
        sub->add_option("--space", space_name, "phase space: plane, sphere or disc")->required();
    };
    auto add_inv_hbar_option = [&](CLI::App* sub) {
        sub->add_option("--inv-hbar", inv_hbar_text, "1/hbar, a number or a fraction like 3/2")
            ->capture_default_str();
    };

    CLI::App* gram = app.add_subcommand("gram", "Gram matrix of the monomial basis");
    add_space_option(gram);
    add_inv_hbar_option(gram);
    gram->add_option("--max-degree", max_degree,
                     "highest monomial degree (default 10, capped at 1/hbar on the sphere)");
    add_output_options(gram);

    CLI::App* kernel = app.add_subcommand("kernel", "reproducing kernel K(z, w)");
    add_space_option(kernel);
    add_inv_hbar_option(kernel);
    kernel->add_option("--z", z_text, "first point, re or re,im")->required();
    kernel->add_option("--w", w_text, "second point, re or re,im")->required();
    kernel->add_option("--max-degree", max_degree,
                       "kernel truncation degree (default 40; 1/hbar on the sphere)");
    add_output_options(kernel);

    CLI::App* coherent = app.add_subcommand("coherent", "normalized coherent state at a label");
    add_space_option(coherent);
    add_inv_hbar_option(coherent);
    coherent->add_option("--label", label_text, "phase-space label, re or re,im")->required();
    coherent->add_option("--truncation", truncation,
                         "basis truncation degree (default 40; 1/hbar on the sphere)");
    add_output_options(coherent);

    CLI::App* resolution = app.add_subcommand("resolution", "resolution-of-identity residual");
    add_space_option(resolution);
    add_inv_hbar_option(resolution);
    resolution->add_option("--max-degree", max_degree,
                           "basis degrees checked (default 10 plane, 1/hbar sphere, 8 disc)");
    add_output_options(resolution);

    CLI::App* sweep = app.add_subcommand("sweep", "scaled log-overlap across a 1/hbar sequence");
    add_space_option(sweep);
    sweep->add_option("--inv-hbar-list", list_text,
                      "comma-separated strictly increasing 1/hbar values, at least three")
        ->required();
    sweep->add_option("--pair", pair_texts,
                      "probe pair u,v (two real or four real components), repeatable")
        ->required();
    add_output_options(sweep);

    CLI::App* duality =
        app.add_subcommand("duality", "coherence residual under a Moebius vacuum change (plane)");
    add_inv_hbar_option(duality);
    duality->add_option("--map", map_name, "identity, S, translation:<b>, scaling:<a> or a,b,c,d")
        ->capture_default_str();
    duality->add_option("--weight", weight, "pullback weight, a nonnegative integer")
        ->capture_default_str();
    duality->add_option("--label", label_text, "coherent-state label (default 0.5)");
    duality->add_option("--truncation", truncation, "basis truncation degree (default 40)");
    add_output_options(duality);

    CLI::App* dimension =
        app.add_subcommand("dimension", "finite-norm dimension of the quantization");
    add_space_option(dimension);
    add_inv_hbar_option(dimension);
    add_output_options(dimension);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("berezin-cli");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        throw HelpRequested{parsed.empty() ? app.help() : parsed.front()->help()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    ExperimentConfig config;
    config.command = app.get_subcommands().front()->get_name();
    if (format != "json" && format != "csv")
        throw UsageError("unknown output format '" + format + "' (expected json or csv)");
    if (format == "csv" && config.command != "sweep")
        throw std::invalid_argument("csv output is only available for the sweep command");
    config.output_format = format;
    config.output_path = output_path;
    if (!(tolerance > 1e-14) || !(tolerance < 1e-2))
        throw std::invalid_argument("target relative error must lie in (1e-14, 1e-2)");
    config.tolerance = tolerance;

    config.space = config.command == "duality" ? SpaceKind::Plane : resolve_space(space_name);

    if (config.command == "sweep") {
        for (const std::string& part : split_commas(list_text))
            config.inv_hbar_list.push_back(parse_rational(part));
        for (double value : config.inv_hbar_list) check_model_constraints(config.space, value);
        if (config.space == SpaceKind::Sphere)
            for (double& value : config.inv_hbar_list) value = std::round(value);
        if (config.inv_hbar_list.size() < 3)
            throw std::invalid_argument("sweep needs at least three 1/hbar values");
        for (std::size_t i = 1; i < config.inv_hbar_list.size(); ++i)
            if (!(config.inv_hbar_list[i] > config.inv_hbar_list[i - 1]))
                throw std::invalid_argument("sweep 1/hbar sequence must be strictly increasing");
        for (const std::string& text : pair_texts) config.pairs.push_back(parse_pair_value(text));
    } else {
        config.inv_hbar = parse_rational(inv_hbar_text);
        check_model_constraints(config.space, config.inv_hbar);
        if (config.space == SpaceKind::Sphere) config.inv_hbar = std::round(config.inv_hbar);
    }

    if (config.command == "kernel") {
        config.labels = {parse_complex_value(z_text), parse_complex_value(w_text)};
    } else if (config.command == "coherent") {
        config.labels = {parse_complex_value(label_text)};
    } else if (config.command == "duality") {
        config.labels = {label_text.empty() ? Complex(0.5, 0.0) : parse_complex_value(label_text)};
        config.map_name = map_name;
        config.weight = weight;
        parse_map(config.map_name, config.weight);
    }

    if (max_degree != -1 && max_degree < 0)
        throw std::invalid_argument("max degree must be nonnegative");
    if ((config.command == "coherent" || config.command == "duality") && truncation != -1 &&
        truncation < 1)
        throw std::invalid_argument("truncation must be at least 1");
    config.max_degree = max_degree;
    config.truncation = truncation;
    resolve_defaults(config);
    return config;
}

std::vector<std::string> to_args(const ExperimentConfig& config) {
    std::vector<std::string> args;
    args.push_back(config.command);
    if (config.command != "duality") {
        args.push_back("--space");
        args.push_back(to_string(config.space));
    }
    if (config.command == "sweep") {
        std::string joined;
        for (std::size_t i = 0; i < config.inv_hbar_list.size(); ++i) {
            if (i) joined += ",";
            joined += format_double(config.inv_hbar_list[i]);
        }
        args.push_back("--inv-hbar-list");
        args.push_back(joined);
        for (const auto& pair : config.pairs) {
            args.push_back("--pair");
            args.push_back(pair_arg(pair));
        }
    } else {
        args.push_back("--inv-hbar");
        args.push_back(format_double(config.inv_hbar));
    }
    if (config.command == "kernel") {
        args.push_back("--z");
        args.push_back(complex_arg(config.labels.at(0)));
        args.push_back("--w");
        args.push_back(complex_arg(config.labels.at(1)));
    }
    if (config.command == "duality") {
        args.push_back("--map");
        args.push_back(config.map_name);
        args.push_back("--weight");
        args.push_back(std::to_string(config.weight));
    }
    if (config.command == "coherent" || config.command == "duality") {
        args.push_back("--label");
        args.push_back(complex_arg(config.labels.at(0)));
        args.push_back("--truncation");
        args.push_back(std::to_string(config.truncation));
    }
    if (config.command == "gram" || config.command == "kernel" || config.command == "resolution") {
        args.push_back("--max-degree");
        args.push_back(std::to_string(config.max_degree));
    }
    args.push_back("--format");
    args.push_back(config.output_format);
    if (!config.output_path.empty()) {
        args.push_back("--output");
        args.push_back(config.output_path);
    }
    args.push_back("--tolerance");
    args.push_back(format_double(config.tolerance));
    return args;
}

std::string run_to_string(const ExperimentConfig& config) {
    if (config.output_format != "json" && config.output_format != "csv")
        throw std::invalid_argument("unknown output format '" + config.output_format + "'");
    if (config.output_format == "csv" && config.command != "sweep")
        throw std::invalid_argument("csv output is only available for the sweep command");
    if (config.command == "gram") return run_gram(config);
    if (config.command == "kernel") return run_kernel(config);
    if (config.command == "coherent") return run_coherent(config);
    if (config.command == "resolution") return run_resolution(config);
    if (config.command == "dimension") return run_dimension(config);
    if (config.command == "sweep") return run_sweep_command(config);
    if (config.command == "duality") return run_duality(config);
    throw std::invalid_argument("unknown command '" + config.command + "'");
}

int run(const ExperimentConfig& config) {
    const std::string document = run_to_string(config);
    if (config.output_path.empty()) {
        std::cout << document;
        return 0;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + config.output_path);
    out << document;
    out.flush();
    if (!out) throw std::runtime_error("failed writing output file " + config.output_path);
    return 0;
}

}
