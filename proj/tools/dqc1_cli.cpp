// Copyright 2026 The dqc1sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dqc1: simulate, transform and benchmark one-clean-qubit communication
// protocols.
//
// Exit codes: 0 success, 2 validation/domain/shape/parse errors, 3 backend
// limits, 1 when `verify` finds a failing check.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dqc1/classical.hpp"
#include "dqc1/problems.hpp"
#include "dqc1/protocol.hpp"
#include "dqc1/simulator.hpp"
#include "dqc1/transforms.hpp"
#include "dqc1/verify.hpp"

#ifndef DQC1_VERSION
#define DQC1_VERSION "0.0.0"
#endif

namespace {

using dqc1::json;

struct Global {
    std::optional<std::uint64_t> seed;
    std::string out;
    bool csv = false;
    bool timing = false;

    std::uint64_t resolved_seed() const {
        if (seed) return *seed;
        if (const char *env = std::getenv("DQC1_SEED")) {
            try {
                return std::stoull(env);
            } catch (const std::exception &) {
                throw dqc1::ValidationError(std::string("DQC1_SEED is not an unsigned integer: ") + env);
            }
        }
        return 0;
    }
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dqc1::ValidationError("cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dqc1::ValidationError("cannot write \"" + path + "\"");
    out << text;
}

void emit(const Global &g, const std::string &text) {
    if (g.out.empty()) {
        std::cout << text;
    } else {
        write_file(g.out, text);
    }
}

json envelope(const std::string &command, const json &config, std::uint64_t seed) {
    return json{{"tool", "dqc1"}, {"version", DQC1_VERSION}, {"command", command}, {"config", config}, {"seed", seed}};
}

// ---------------------------------------------------------------------------
// Protocol selection shared by run and transform.

struct ProtocolArgs {
    std::string name;
    std::string descriptor;
    int n = 2;

    void add(CLI::App *app) {
        auto *p = app->add_option("--protocol", name, "built-in: ip2-clocked, ip2-one-clean, middle, middle-one-clean, abc");
        auto *d = app->add_option("--descriptor", descriptor, "protocol descriptor file");
        p->excludes(d);
        app->add_option("--n", n, "problem size for built-ins");
    }

    json config() const {
        json j{{"n", n}};
        if (!name.empty()) j["protocol"] = name;
        if (!descriptor.empty()) j["descriptor"] = descriptor;
        return j;
    }

    dqc1::ProtocolSpec load() const {
        if (!descriptor.empty()) return dqc1::deserialize(read_file(descriptor));
        if (name == "ip2-clocked") return dqc1::ip2_clocked(n);
        if (name == "ip2-one-clean") return dqc1::ip2_one_clean(n);
        if (name == "middle") return dqc1::middle_protocol(n);
        if (name == "middle-one-clean") return dqc1::middle_protocol(n, dqc1::MiddleVariant::OneClean);
        if (name == "abc") return dqc1::abc_protocol(n);
        if (name.empty()) throw dqc1::ValidationError("pass --protocol or --descriptor");
        throw dqc1::ValidationError("unknown protocol \"" + name + "\"");
    }
};

// ---------------------------------------------------------------------------
// run

struct RunArgs {
    ProtocolArgs proto;
    std::string x, y;
    bool all_inputs = false;
    int bits = 0;
    std::string backend = "density";
    std::optional<std::uint64_t> samples;
    std::optional<double> p;
    std::string labels;
    std::string label_by;
    std::string instance;
    int label = 1;
};

std::vector<dqc1::LabeledInput> run_inputs(const RunArgs &a, std::uint64_t seed) {
    using dqc1::LabeledInput;
    using dqc1::PlayerInput;
    std::vector<LabeledInput> in;
    const std::string &fam = a.proto.name;
    if (fam == "abc") {
        dqc1::AbcInstance inst;
        if (!a.instance.empty()) {
            const json j = json::parse(read_file(a.instance));
            inst.n = j.at("n").get<int>();
            inst.label = j.at("label").get<int>();
            inst.a = dqc1::matrix_from_json(j.at("A"), "/A").real();
            inst.b = dqc1::matrix_from_json(j.at("B"), "/B").real();
            inst.c = dqc1::matrix_from_json(j.at("C"), "/C").real();
        } else {
            inst = dqc1::abc_instance(a.proto.n, a.label, seed);
        }
        in.push_back(LabeledInput{inst.inputs(), inst.label == 1 ? 1 : 0});
        return in;
    }
    int width = a.bits;
    if (fam == "ip2-clocked" || fam == "ip2-one-clean" || fam == "middle" || fam == "middle-one-clean") width = a.proto.n;
    if (a.all_inputs) {
        if (width < 1) throw dqc1::ValidationError("--all-inputs on a descriptor needs --bits");
        if (width > 10) throw dqc1::BackendLimitError("--all-inputs enumerates at most 10-bit inputs");
        in = dqc1::all_bit_inputs(width);
    } else {
        if (a.x.empty() && a.y.empty()) return {LabeledInput{{}, -1}};
        in.push_back(LabeledInput{{PlayerInput::from_bits(a.x), PlayerInput::from_bits(a.y)}, -1});
    }
    std::string by = a.label_by;
    if (by.empty() && (fam == "ip2-clocked" || fam == "ip2-one-clean")) by = "ip2";
    if (by.empty() && (fam == "middle" || fam == "middle-one-clean")) by = "middle";
    for (auto &li : in) {
        const auto &xs = li.inputs[0].bits, &ys = li.inputs[1].bits;
        if (by == "ip2") {
            li.label = dqc1::ip2(xs, ys);
        } else if (by == "middle") {
            li.label = dqc1::middle_instance(xs, ys).label();
        } else if (!by.empty()) {
            throw dqc1::ValidationError("unknown --label-by \"" + by + "\"");
        }
    }
    if (!a.labels.empty()) {
        if (a.labels.size() != in.size()) throw dqc1::ValidationError("--labels needs one 0/1 per input");
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (a.labels[i] != '0' && a.labels[i] != '1') throw dqc1::ValidationError("--labels may only contain 0 and 1");
            in[i].label = a.labels[i] - '0';
        }
    }
    return in;
}

int cmd_run(const Global &g, const RunArgs &a) {
    const std::uint64_t seed = g.resolved_seed();
    const auto p = a.proto.load();
    const auto in = run_inputs(a, seed);
    dqc1::SimOptions opt;
    opt.seed = seed;
    opt.samples = a.samples;
    const auto backend = dqc1::backend_from_name(a.backend);

    bool labelled = true;
    for (const auto &li : in) labelled = labelled && li.label >= 0;
    std::optional<double> ref;
    if (labelled) {
        if (a.p) {
            ref = a.p;
        } else if (a.proto.descriptor.empty()) {
            ref = p.declared.p;
        } else {
            throw dqc1::ValidationError("measuring bias on a descriptor protocol needs --p");
        }
    }
    auto rep = dqc1::run_batch(p, in, backend, opt, ref);
    if (!g.timing) {
        rep.elapsed = 0;
        for (auto &r : rep.records) r.elapsed = 0;
    }

    if (g.csv) {
        std::ostringstream os;
        os << "input,acceptance,backend,seed,elapsed\n";
        for (const auto &r : rep.records) {
            os << r.input << ',' << dqc1::format_number(r.acceptance) << ',' << dqc1::backend_name(backend) << ',' << seed << ','
               << dqc1::format_number(r.elapsed) << '\n';
        }
        emit(g, os.str());
        return 0;
    }
    json cfg = a.proto.config();
    cfg["backend"] = a.backend;
    if (!a.x.empty()) cfg["x"] = a.x;
    if (!a.y.empty()) cfg["y"] = a.y;
    if (a.all_inputs) cfg["all_inputs"] = true;
    if (a.samples) cfg["samples"] = *a.samples;
    if (a.p) cfg["p"] = *a.p;
    json j = envelope("run", cfg, seed);
    j["protocol"] = p.name;
    j["backend"] = dqc1::backend_name(backend);
    json recs = json::array();
    for (const auto &r : rep.records) {
        json rj{{"input", r.input}, {"acceptance", r.acceptance}, {"elapsed", r.elapsed}};
        if (r.label >= 0) rj["label"] = r.label;
        recs.push_back(rj);
    }
    j["records"] = recs;
    if (rep.reference) j["reference"] = *rep.reference;
    if (rep.bias_measured) j["bias_measured"] = *rep.bias_measured;
    j["bias_declared"] = p.declared.eps;
    j["elapsed"] = rep.elapsed;
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// transform

struct TransformArgs {
    ProtocolArgs proto;
    std::vector<std::string> passes;
    std::string pp;
    std::string out_descriptor;
    std::string out_cert;
};

int cmd_transform(const Global &g, const TransformArgs &a) {
    const std::uint64_t seed = g.resolved_seed();
    std::vector<std::string> passes = a.passes;
    std::optional<dqc1::ProtocolSpec> cur;
    json certs = json::array();
    std::vector<dqc1::CostReport> costs;
    if (!passes.empty() && passes.front() == "pp-oneway") {
        if (a.pp.empty()) throw dqc1::ValidationError("pp-oneway needs --pp with a classical PP protocol file");
        const auto res = dqc1::pp_to_oneway(dqc1::PPProtocol::from_json(json::parse(read_file(a.pp))));
        cur = res.protocol;
        certs.push_back(res.cert.to_json());
        passes.erase(passes.begin());
    } else {
        cur = a.proto.load();
    }
    for (const auto &pass : passes) {
        const auto res = dqc1::apply_pass(pass, *cur);
        cur = res.protocol;
        certs.push_back(res.cert.to_json());
    }
    dqc1::require_valid(*cur);
    if (!a.out_descriptor.empty()) write_file(a.out_descriptor, dqc1::serialize(*cur) + "\n");
    if (!a.out_cert.empty()) write_file(a.out_cert, certs.dump(2) + "\n");
    if (g.csv) {
        emit(g, dqc1::cost_report_csv({dqc1::cost_report(*cur)}));
        return 0;
    }
    json cfg = a.proto.config();
    cfg["passes"] = a.passes;
    if (!a.pp.empty()) cfg["pp"] = a.pp;
    json j = envelope("transform", cfg, seed);
    j["certs"] = certs;
    j["protocol"] = dqc1::protocol_to_json(*cur);
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// classical

struct ClassicalArgs {
    int n = 16;
    int k = 2;
    double eps = 0.1;
    double c = dqc1::kKnrConstant;
    int trials = 100;
    int samples = 100000;
    int row = 0;
    std::string matrix;
    std::string weights;
};

int cmd_classical(const Global &g, const std::string &which, const ClassicalArgs &a) {
    const std::uint64_t seed = g.resolved_seed();
    json cfg{{"subcommand", which}};
    json result;
    if (which == "knr") {
        cfg.update(json{{"n", a.n}, {"eps", a.eps}, {"trials", a.trials}, {"c", a.c}});
        if (a.n < 1 || a.trials < 1) throw dqc1::DomainError("knr needs n >= 1 and trials >= 1");
        std::mt19937_64 rng(dqc1::derive_seed(seed, 0));
        int fails = 0;
        int bits = 0;
        double worst = 0;
        for (int t = 0; t < a.trials; ++t) {
            const dqc1::RealVector u = dqc1::haar_unit_vector(a.n, rng), v = dqc1::haar_unit_vector(a.n, rng);
            const auto r = dqc1::knr_estimate(u, v, a.eps, rng(), a.c);
            const double err = std::abs(r.estimate - u.dot(v));
            worst = std::max(worst, err);
            fails += err > a.eps;
            bits = r.transcript.total;
        }
        result = json{{"failure_rate", static_cast<double>(fails) / a.trials}, {"max_error", worst}, {"transcript_bits", bits},
                      {"pass", static_cast<double>(fails) / a.trials <= 0.1}};
    } else if (which == "abc") {
        cfg.update(json{{"n", a.n}, {"k", a.k}, {"trials", a.trials}, {"row", a.row}, {"c", a.c}});
        if (a.trials < 1) throw dqc1::DomainError("abc needs trials >= 1");
        dqc1::check_cap_parameter(a.n, a.k);
        if (a.k > 3) std::cerr << "warning: codebook size grows as e^{2k}; k = " << a.k << " gives " << dqc1::cap_codebook_size(a.k) << " vectors\n";
        std::mt19937_64 rng(dqc1::derive_seed(seed, 0));
        json per = json::object();
        bool pass = true;
        int bits = 0;
        for (int label : {1, -1}) {
            int ok = 0, hits = 0;
            for (int t = 0; t < a.trials; ++t) {
                const auto inst = dqc1::abc_instance(a.n, label, rng());
                const auto r = dqc1::abc_classical(inst, a.row, a.k, rng(), a.c);
                ok += r.answer == (label == 1 ? 1 : 0);
                hits += r.cap_hit;
                bits = r.transcript.total;
            }
            const double rate = static_cast<double>(ok) / a.trials;
            pass = pass && rate >= 0.9;
            per[label == 1 ? "plus_identity" : "minus_identity"] = json{{"success_rate", rate}, {"cap_hits", hits}};
        }
        result = json{{"labels", per},
                      {"codebook_size", dqc1::cap_codebook_size(a.k)},
                      {"index_bits", dqc1::index_bits(dqc1::cap_codebook_size(a.k))},
                      {"transcript_bits", bits},
                      {"pass", pass}};
    } else if (which == "caps") {
        cfg.update(json{{"n", a.n}, {"k", a.k}, {"samples", a.samples}});
        const double est = dqc1::cap_probability_mc(a.n, a.k, a.samples, seed);
        const double bound = dqc1::cap_lower_bound(a.k);
        result = json{{"estimate", est}, {"bound", bound}, {"pass", est > bound}};
    } else if (which == "disc") {
        cfg.update(json{{"matrix", a.matrix}});
        if (!a.weights.empty()) cfg["weights"] = a.weights;
        if (a.matrix.empty()) throw dqc1::ValidationError("disc needs --matrix");
        const auto m = dqc1::sign_matrix_from_csv(read_file(a.matrix), a.weights.empty() ? "" : read_file(a.weights));
        result = dqc1::disc_bruteforce(m).to_json();
    }
    if (g.csv) {
        std::ostringstream os;
        std::vector<std::string> keys;
        for (auto it = result.begin(); it != result.end(); ++it) {
            if (!it.value().is_structured()) keys.push_back(it.key());
        }
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
        os << '\n';
        for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << result[keys[i]].dump();
        os << '\n';
        emit(g, os.str());
        return 0;
    }
    json j = envelope("classical", cfg, seed);
    j["result"] = result;
    emit(g, j.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Global &g, const std::vector<int> &only) {
    const auto checks = dqc1::acceptance_checks();
    json rows = json::array();
    std::ostringstream text;
    bool all = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const int id = static_cast<int>(i + 1);
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto r = dqc1::run_check(checks[i], id);
        if (!g.timing) r.seconds = 0;
        all = all && r.pass;
        rows.push_back(json{{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << ' ' << r.title << '\n';
    }
    json j = envelope("verify", json{{"only", only}}, g.resolved_seed());
    j["checks"] = rows;
    j["pass"] = all;
    emit(g, j.dump(2) + "\n");
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
    int n = 2;
    int label = 1;
    std::string which = "mu1";
    int count = 10;
    std::string x, y;
};

int cmd_gen(const Global &g, const std::string &what, const GenArgs &a) {
    const std::uint64_t seed = g.resolved_seed();
    if (what == "abc-instance") {
        const auto inst = dqc1::abc_instance(a.n, a.label, seed);
        json j = envelope("gen", json{{"generator", what}, {"n", a.n}, {"label", a.label}}, seed);
        j["n"] = inst.n;
        j["label"] = inst.label;
        j["A"] = dqc1::matrix_to_json(dqc1::to_complex(inst.a));
        j["B"] = dqc1::matrix_to_json(dqc1::to_complex(inst.b));
        j["C"] = dqc1::matrix_to_json(dqc1::to_complex(inst.c));
        emit(g, j.dump(2) + "\n");
        return 0;
    }
    std::ostringstream os;
    os << "x,y,label\n";
    if (what == "razborov") {
        dqc1::Razborov w;
        if (a.which == "mu0") {
            w = dqc1::Razborov::Mu0;
        } else if (a.which == "mu1") {
            w = dqc1::Razborov::Mu1;
        } else {
            throw dqc1::ValidationError("--which must be mu0 or mu1");
        }
        if (a.count < 0) throw dqc1::DomainError("--count must be nonnegative");
        std::mt19937_64 rng(dqc1::derive_seed(seed, 0));
        // label: 1 for disjoint supports (a MIDDLE 1-input after padding), 0 otherwise.
        for (int i = 0; i < a.count; ++i) {
            const auto s = dqc1::razborov_sample(a.n, w, rng);
            os << s.x << ',' << s.y << ',' << (w == dqc1::Razborov::Mu1 ? 1 : 0) << '\n';
        }
    } else {
        const auto padded = dqc1::middle_pad(dqc1::StringPair{a.x, a.y}, a.n);
        int sum = 0;
        for (std::size_t i = 0; i < padded.x.size(); ++i) sum += padded.x[i] == '1' && padded.y[i] == '1';
        os << padded.x << ',' << padded.y << ',' << (sum != a.n / 2 ? 1 : 0) << '\n';
    }
    emit(g, os.str());
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"dqc1: one-clean-qubit communication protocol toolkit"};
    app.set_version_flag("--version", DQC1_VERSION);
    app.fallthrough();  // global flags may follow the subcommand
    app.require_subcommand(1);
    Global g;
    app.add_option("--seed", g.seed, "root seed (default: $DQC1_SEED, else 0)");
    app.add_option("--out", g.out, "write the report here instead of standard output");
    app.add_flag("--csv", g.csv, "CSV instead of structured text");
    app.add_flag("--timing", g.timing, "record wall-clock times (reports are otherwise byte-reproducible)");

    RunArgs ra;
    auto *run = app.add_subcommand("run", "simulate a protocol");
    ra.proto.add(run);
    run->add_option("--x", ra.x, "Alice's input bits");
    run->add_option("--y", ra.y, "Bob's input bits");
    run->add_flag("--all-inputs", ra.all_inputs, "enumerate every input pair");
    run->add_option("--bits", ra.bits, "input length for --all-inputs on descriptors");
    run->add_option("--backend", ra.backend, "density | ensemble | trace")->check(CLI::IsMember({"density", "ensemble", "trace"}));
    run->add_option("--samples", ra.samples, "ensemble backend: sampled branches");
    run->add_option("--p", ra.p, "reference point for the measured bias");
    run->add_option("--labels", ra.labels, "0/1 label per input, in enumeration order");
    run->add_option("--label-by", ra.label_by, "label inputs by a known function: ip2 | middle");
    run->add_option("--instance", ra.instance, "ABC instance file (from gen abc-instance)");
    run->add_option("--label", ra.label, "ABC label when generating an instance: 1 or -1");

    TransformArgs ta;
    auto *tr = app.add_subcommand("transform", "apply transform passes left to right");
    ta.proto.add(tr);
    tr->add_option("--pass", ta.passes, "k1 | sq-measure | fixed | trace-form | unclock | lemma1 | pp-oneway")->required();
    tr->add_option("--pp", ta.pp, "classical PP protocol file for pp-oneway");
    tr->add_option("--out-descriptor", ta.out_descriptor, "write the resulting descriptor");
    tr->add_option("--out-cert", ta.out_cert, "write the certificates");

    ClassicalArgs ca;
    std::string classical_which;
    auto *cl = app.add_subcommand("classical", "classical baselines");
    cl->require_subcommand(1);
    auto add_common = [&](CLI::App *s) { s->add_option("--n", ca.n, "vector dimension"); };
    auto *knr = cl->add_subcommand("knr", "inner-product estimation by sign sketches");
    add_common(knr);
    knr->add_option("--eps", ca.eps, "accuracy");
    knr->add_option("--trials", ca.trials, "random vector pairs");
    knr->add_option("--c", ca.c, "sketch constant C in s = ceil(C/eps^2)");
    auto *abc = cl->add_subcommand("abc", "randomized ABC protocol with a cap codebook");
    add_common(abc);
    abc->add_option("--k", ca.k, "cap parameter, 1 <= k <= n/4");
    abc->add_option("--trials", ca.trials, "instances per label");
    abc->add_option("--row", ca.row, "row index i");
    abc->add_option("--c", ca.c, "sketch constant C");
    auto *caps = cl->add_subcommand("caps", "Monte Carlo spherical-cap probability");
    add_common(caps);
    caps->add_option("--k", ca.k, "cap parameter");
    caps->add_option("--samples", ca.samples, "samples (>= 10^4)");
    auto *disc = cl->add_subcommand("disc", "exact discrepancy by rectangle enumeration");
    disc->add_option("--matrix", ca.matrix, "CSV of +1/-1 entries")->required();
    disc->add_option("--weights", ca.weights, "CSV of cell weights (default uniform)");
    for (auto *s : {knr, abc, caps, disc}) s->callback([&classical_which, s] { classical_which = s->get_name(); });

    std::vector<int> only;
    auto *ver = app.add_subcommand("verify", "run the acceptance checks");
    ver->add_option("--only", only, "criterion numbers to run")->delimiter(',');

    GenArgs ga;
    std::string gen_which;
    auto *gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto *gabc = gen->add_subcommand("abc-instance", "random ABC instance");
    gabc->add_option("--n", ga.n, "even dimension");
    gabc->add_option("--label", ga.label, "1 (ABC = I) or -1 (ABC = -I)");
    auto *graz = gen->add_subcommand("razborov", "samples from mu0 / mu1 as CSV x,y,label");
    graz->add_option("--n", ga.n, "MIDDLE length; n/2+1 must be divisible by 4");
    graz->add_option("--which", ga.which, "mu0 | mu1");
    graz->add_option("--count", ga.count, "number of samples");
    auto *gpad = gen->add_subcommand("middle-pad", "pad a disjointness pair into a MIDDLE input");
    gpad->add_option("--x", ga.x)->required();
    gpad->add_option("--y", ga.y)->required();
    gpad->add_option("--n", ga.n, "MIDDLE length")->required();
    for (auto *s : {gabc, graz, gpad}) s->callback([&gen_which, s] { gen_which = s->get_name(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(g, ra);
        if (tr->parsed()) return cmd_transform(g, ta);
        if (cl->parsed()) return cmd_classical(g, classical_which, ca);
        if (ver->parsed()) return cmd_verify(g, only);
        if (gen->parsed()) return cmd_gen(g, gen_which, ga);
    } catch (const dqc1::BackendLimitError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const dqc1::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
