/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "qsr/extension.hpp"
#include "qsr/generator.hpp"
#include "qsr/geometry.hpp"
#include "qsr/instance_io.hpp"
#include "qsr/rng.hpp"
#include "qsr/structure.hpp"
#include "qsr/uniqueness.hpp"

namespace qsr {

namespace {

struct Options {
	std::string input;
	std::string second;
	std::string set_key;
	bool set_given = false;
	bool all = false;
	std::uint64_t seed = 0;
	std::uint64_t budget = 10'000;
	std::uint64_t samples = 1000;
	std::size_t n = 4;
	std::string style = "semiring";
	std::string output;
	std::string format = "text";
	std::size_t max_universe = kDefaultMaxUniverse;
};

/* Anything that ends the command with exit code 2. */
struct CommandError {
	std::vector<Diagnostic> diagnostics;
};

[[noreturn]] void fail_with(std::string code, std::string field, std::string message)
{
	throw CommandError{{{std::move(code), std::move(field), std::move(message)}}};
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string set_value(const Universe &u, const Subset &s)
{
	return "{" + subset_key(u, s) + "}";
}

std::string set_list(const Universe &u, std::span<const Subset> sets)
{
	std::string out;
	for (const Subset &s : sets)
		out += (out.empty() ? "" : " ") + set_value(u, s);
	return out;
}

std::string weight_list(const Universe &u, const std::vector<MeasureValue> &w)
{
	std::string out;
	for (std::size_t i = 0; i < w.size(); ++i)
		out += (i ? " " : "") + u.label(i) + "=" + w[i].to_string();
	return out;
}

Instance load(const std::string &path, const Options &o, const char *flag)
{
	if (path.empty())
		fail_with("MISSING_FIELD", flag, std::string("this command needs ") + flag);
	ParseResult res = parse_instance_file(path, ParseOptions{o.max_universe});
	if (!res.instance)
		throw CommandError{std::move(res.diagnostics)};
	return std::move(*res.instance);
}

Subset subset_arg(const Instance &inst, const std::string &key)
{
	auto s = parse_subset_key(inst.universe(), key);
	if (!s)
		fail_with("UNKNOWN_LABEL", "--set", "\"" + key + "\" does not name a subset");
	return *s;
}

OuterMeasureTable table_for(const Instance &inst, const Options &o)
{
	return outer_measure_table(inst, std::max(o.max_universe, kDefaultTableCap));
}

void add_split(Report &r, const Universe &u, const SplitWitness &w)
{
	r.add("e", set_value(u, w.e));
	r.add("outer_e", w.whole.to_string());
	r.add("split_sum", w.split.to_string());
}

/* Second premeasure, reordered to the first instance's class order. */
TwoMeasureInstance load_pair(const Options &o)
{
	Instance first = load(o.input, o, "--input");
	Instance second = load(o.second, o, "--second");
	if (first.universe().labels() != second.universe().labels())
		fail_with("CLASS_MISMATCH", "--second", "the universes differ");
	const SetClass &a = first.set_class(), &b = second.set_class();
	if (a.size() != b.size())
		fail_with("CLASS_MISMATCH", "--second", "the classes differ");
	Premeasure mu;
	for (const Subset &s : a) {
		auto v = second.mu_of(s);
		if (!v)
			fail_with("CLASS_MISMATCH", "--second",
			          "member " + set_value(first.universe(), s) + " is missing");
		mu.push_back(*v);
	}
	return TwoMeasureInstance(std::move(first), std::move(mu));
}

/* ---- commands ---- */

Report check_structure(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	StructureReport s = is_quasi_semi_ring(inst.set_class());
	Report r;
	r.verdict = s.quasi_semi_ring ? Verdict::pass : Verdict::fail;
	r.add("quasi_semi_ring", yes_no(s.quasi_semi_ring));
	r.add("semi_ring", yes_no(s.semi_ring));
	r.add("ring", yes_no(s.ring));
	r.add("algebra", yes_no(s.algebra));
	if (s.failure) {
		r.add("reason", s.failure->reason);
		if (s.failure->a)
			r.add("a", set_value(u, *s.failure->a));
		if (s.failure->b)
			r.add("b", set_value(u, *s.failure->b));
		if (s.failure->target)
			r.add("target", set_value(u, *s.failure->target));
	}
	return r;
}

Report validate(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	ValidationReport v = validate_premeasure(inst);
	Report r;
	r.verdict = v.verdict;
	r.add("members", std::to_string(inst.set_class().size()));
	if (v.witness) {
		r.add("target", set_value(u, v.witness->target));
		r.add("partition", set_list(u, v.witness->partition));
		r.add("partition_sum", v.witness->expected.to_string());
		r.add("value", v.witness->actual.to_string());
	}
	if (v.capped_member) {
		r.add("capped_member", set_value(u, *v.capped_member));
		r.add("node_cap", std::to_string(v.node_cap));
	}
	return r;
}

Report outer_measure(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	Subset s = subset_arg(inst, o.set_key);
	OuterMeasureTable t = table_for(inst, o);
	Report r;
	r.add("set", set_value(inst.universe(), s));
	r.add("outer_measure", t.at(s).to_string());
	return r;
}

Report measurable(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	OuterMeasureTable t = table_for(inst, o);
	Report r;
	if (o.set_given) {
		Subset a = subset_arg(inst, o.set_key);
		r.add("set", set_value(u, a));
		auto w = measurability_witness(t, a);
		r.add("measurable", yes_no(!w));
		if (w) {
			r.verdict = Verdict::fail;
			add_split(r, u, *w);
		}
		return r;
	}
	if (o.all) {
		MeasurabilityReport m = measurable_sets(t);
		r.verdict = m.is_algebra() ? Verdict::pass : Verdict::fail;
		r.add("count", std::to_string(m.measurable_sets.size()));
		r.add("measurable", set_list(u, m.measurable_sets));
		r.add("algebra", yes_no(m.is_algebra()));
		return r;
	}
	std::size_t count = 0;
	for (const Subset &a : inst.set_class()) {
		auto w = measurability_witness(t, a);
		if (!w) {
			++count;
			continue;
		}
		if (r.verdict == Verdict::pass) {
			r.verdict = Verdict::fail;
			r.add("non_measurable", set_value(u, a));
			add_split(r, u, *w);
		}
	}
	r.add("measurable_members", std::to_string(count) + "/"
	                            + std::to_string(inst.set_class().size()));
	return r;
}

Report verify_extension(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	ExtensionReport e = verify_extension_theorem(inst, std::max(o.max_universe, kDefaultTableCap));
	Report r;
	r.verdict = e.verdict;
	if (!e.reason.empty())
		r.add("reason", e.reason);
	if (e.member)
		r.add("member", set_value(u, *e.member));
	if (e.split)
		add_split(r, u, *e.split);
	if (e.outer)
		r.add("outer_measure", e.outer->to_string());
	if (e.premeasure)
		r.add("premeasure", e.premeasure->to_string());
	if (e.verdict == Verdict::pass)
		r.add("members", std::to_string(inst.set_class().size()));
	return r;
}

Report verify_prop1(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	AlternativeDefinitionReport a =
		verify_alternative_definition(inst, std::max(o.max_universe, kDefaultTableCap));
	Report r;
	r.verdict = a.verdict;
	if (!a.reason.empty())
		r.add("reason", a.reason);
	if (a.witness)
		r.add("set", set_value(inst.universe(), *a.witness));
	if (a.disjoint_value)
		r.add("disjoint_outer_measure", a.disjoint_value->to_string());
	if (a.table_value)
		r.add("outer_measure", a.table_value->to_string());
	if (a.verdict == Verdict::pass)
		r.add("subsets", std::to_string(std::size_t(1) << inst.size()));
	return r;
}

Report ring(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	Report r;
	if (!is_quasi_semi_ring(inst.set_class()).quasi_semi_ring) {
		r.verdict = Verdict::skipped;
		r.add("reason", "the class is not a quasi-semi-ring");
		return r;
	}
	RingReport g = verify_smallest_ring(inst.set_class());
	r.verdict = g.verdict;
	if (!g.reason.empty())
		r.add("reason", g.reason);
	if (g.witness)
		r.add("witness", set_value(u, *g.witness));
	r.add("ring_size", std::to_string(g.ring_size));
	if (g.verdict == Verdict::pass)
		r.add("ring", set_list(u, generate_ring(inst.set_class()).members));
	return r;
}

void add_uniqueness(Report &r, const Universe &u, const UniquenessReport &q)
{
	r.verdict = q.verdict;
	if (!q.reason.empty())
		r.add("reason", q.reason);
	if (q.witness)
		r.add("witness", set_value(u, *q.witness));
	if (q.first_value)
		r.add("first_value", q.first_value->to_string());
	if (q.second_value)
		r.add("second_value", q.second_value->to_string());
	if (q.verdict != Verdict::skipped)
		r.add("ring_size", std::to_string(q.ring_size));
}

Report uniqueness(const Options &o)
{
	TwoMeasureInstance two = load_pair(o);
	Report r;
	add_uniqueness(r, two.first().universe(),
	               verify_uniqueness_on_ring(two, std::max(o.max_universe, kDefaultTableCap)));
	return r;
}

Report sigma_uniqueness(const Options &o)
{
	TwoMeasureInstance two = load_pair(o);
	UniquenessReport q =
		verify_sigma_uniqueness(two, std::max(o.max_universe, kDefaultTableCap));
	Report r;
	add_uniqueness(r, two.first().universe(), q);
	if (q.verdict != Verdict::skipped) {
		r.add("sigma_size", std::to_string(q.sigma_size));
		r.add("universe_in_ring", yes_no(q.full_in_ring));
		r.add("sigma_equals_ring", yes_no(q.sigma_equals_ring));
	}
	return r;
}

Report counterexample(const Options &o)
{
	Instance inst = load(o.input, o, "--input");
	const Universe &u = inst.universe();
	Report r;
	r.seed = o.seed;
	if (validate_premeasure(inst).verdict != Verdict::pass) {
		r.verdict = Verdict::skipped;
		r.add("reason", "the premeasure does not validate");
		return r;
	}
	auto w = search_uniqueness_counterexample(
		inst, SearchOptions{o.seed, o.budget, std::max(o.max_universe, kDefaultTableCap)});
	r.add("budget", std::to_string(o.budget));
	if (!w) {
		r.verdict = Verdict::none;
		return r;
	}
	r.verdict = Verdict::found;
	r.add("set", set_value(u, w->set));
	r.add("first_value", w->first_value.to_string());
	r.add("second_value", w->second_value.to_string());
	r.add("first_weights", weight_list(u, w->first_weights));
	r.add("second_weights", weight_list(u, w->second_weights));
	r.add("trial", std::to_string(w->trial));
	return r;
}

Report arcs_demo(const Options &o)
{
	Arc a(0, Rational(3, 2)), b(1, Rational(5, 2));
	ArcSet inter = arc_intersect(a, b);
	/* listed from B's start around the circle */
	std::vector<Arc> pieces = inter.pieces;
	std::sort(pieces.begin(), pieces.end(), [&](const Arc &x, const Arc &y) {
		return mod2(x.start() - b.start()) < mod2(y.start() - b.start());
	});
	std::string shown;
	for (const Arc &p : pieces)
		shown += (shown.empty() ? "" : " ∪ ") + format_pi(p);

	GeometryReport g = verify_arc_qsr(o.samples, o.seed);
	Report r;
	r.seed = o.seed;
	r.add("a", format_pi(a));
	r.add("b", format_pi(b));
	r.add("intersection", shown);
	r.add("pieces", std::to_string(pieces.size()));
	r.add("length", format_pi(inter.length()));
	r.add("samples", std::to_string(g.samples));
	r.add("max_pieces", std::to_string(g.max_pieces));
	if (!g.failure.empty())
		r.add("failure", g.failure);
	bool ok = pieces.size() == 2 && g.verdict == Verdict::pass && g.witness_reproduced;
	r.verdict = ok ? Verdict::pass : Verdict::fail;
	return r;
}

Report rects_demo(const Options &o)
{
	Rect a(0, 2, 0, 3), b(0, 3, 0, 2);
	RectSet inter = rect_intersect(a, b);
	GeometryReport g = verify_rect_qsr(o.samples, o.seed);
	Report r;
	r.seed = o.seed;
	r.add("a", a.to_string());
	r.add("b", b.to_string());
	r.add("intersection", inter.to_string());
	r.add("pieces", std::to_string(inter.pieces.size()));
	r.add("area", MeasureValue::finite(inter.area()).to_string());
	r.add("samples", std::to_string(g.samples));
	r.add("max_pieces", std::to_string(g.max_pieces));
	if (!g.failure.empty())
		r.add("failure", g.failure);
	bool ok = inter.pieces.size() == 2 && inter.area() == 4 && g.verdict == Verdict::pass
	       && g.witness_reproduced;
	r.verdict = ok ? Verdict::pass : Verdict::fail;
	return r;
}

Report gen(const Options &o, std::string &instance_text)
{
	auto style = parse_style(o.style);
	if (!style)
		fail_with("UNKNOWN_STYLE", "--style",
		          "expected semiring, venn or rejection; got \"" + o.style + "\"");
	if (o.n == 0 || o.n > std::min(o.max_universe, kHardMaxUniverse))
		fail_with("UNIVERSE_TOO_LARGE", "--n",
		          "n must be between 1 and " + std::to_string(o.max_universe));
	GeneratedInstance g = generate_random_instance(o.seed, o.n, *style);
	Report r;
	r.seed = o.seed;
	r.verdict = g.verdict;
	r.add("style", o.style);
	r.add("n", std::to_string(o.n));
	if (!g.instance) {
		r.add("reason", "rejection sampling ran out of attempts");
		return r;
	}
	r.add("members", std::to_string(g.instance->set_class().size()));
	instance_text = serialize_instance(*g.instance);
	if (!o.output.empty()) {
		std::ofstream out(o.output);
		if (!(out << instance_text))
			fail_with("IO_ERROR", o.output, "cannot write file");
		r.add("output", o.output);
	}
	return r;
}

} // namespace

CommandResult run_command(const std::vector<std::string> &args)
{
	auto start = std::chrono::steady_clock::now();
	Options o;
	CLI::App app{"Finite quasi-semi-ring and Carathéodory extension checker", "qsr"};
	app.require_subcommand(1);
	app.fallthrough();
	app.add_option("-i,--input", o.input, "instance file (.qsr)");
	app.add_option("--format", o.format, "text or records")
		->check(CLI::IsMember({"text", "records"}));
	app.add_option("--max-universe", o.max_universe, "largest accepted universe")
		->check(CLI::Range(std::size_t(1), kHardMaxUniverse));

	using Handler = std::function<Report(const Options &)>;
	std::map<std::string, Handler> handlers;
	auto sub = [&](const char *name, const char *help, Handler h) {
		handlers.emplace(name, std::move(h));
		return app.add_subcommand(name, help);
	};

	sub("check-structure", "quasi-semi-ring / semi-ring / ring / algebra levels",
	    check_structure);
	sub("validate-premeasure", "mu(empty) = 0 and additivity on the class", validate);
	sub("outer-measure", "mu*(E) for one subset", outer_measure)
		->add_option("--set", o.set_key, "subset key, e.g. \"a,b\"")
		->required();
	{
		CLI::App *m = sub("measurable", "Carathéodory measurability", measurable);
		m->add_option("--set", o.set_key, "test one subset");
		m->add_flag("--all", o.all, "list every measurable subset");
	}
	sub("verify-extension", "members measurable and mu* = mu on the class",
	    verify_extension);
	sub("verify-prop1", "disjoint-cover infimum equals mu* everywhere", verify_prop1);
	sub("generate-ring", "smallest ring containing the class", ring);
	sub("verify-uniqueness", "two agreeing premeasures agree on the ring", uniqueness)
		->add_option("--second", o.second, "second instance file")
		->required();
	sub("verify-sigma-uniqueness", "agreement on the generated sigma-algebra",
	    sigma_uniqueness)
		->add_option("--second", o.second, "second instance file")
		->required();
	{
		CLI::App *s = sub("search-counterexample",
		                  "two extensions that differ outside the ring", counterexample);
		s->add_option("--seed", o.seed, "random seed");
		s->add_option("--budget", o.budget, "number of trials");
	}
	for (const char *name : {"arcs-demo", "rects-demo"}) {
		CLI::App *d = sub(name, name[0] == 'a' ? "arcs on the circle" : "plane rectangles",
		                  name[0] == 'a' ? Handler(arcs_demo) : Handler(rects_demo));
		d->add_option("--seed", o.seed, "random seed");
		d->add_option("--budget", o.samples, "random pairs to check");
	}
	std::string instance_text;
	{
		CLI::App *g = sub("gen", "random instance", [&](const Options &opt) {
			return gen(opt, instance_text);
		});
		g->add_option("--seed", o.seed, "random seed");
		g->add_option("--n", o.n, "universe size");
		g->add_option("--style", o.style, "semiring, venn or rejection");
		g->add_option("-o,--output", o.output, "write the instance here");
	}

	CommandResult res;
	std::vector<const char *> argv{"qsr"};
	for (const std::string &a : args)
		argv.push_back(a.c_str());
	try {
		app.parse(static_cast<int>(argv.size()), argv.data());
	} catch (const CLI::CallForHelp &) {
		res.output = app.help();
		return res;
	} catch (const CLI::CallForAllHelp &) {
		res.output = app.help("", CLI::AppFormatMode::All);
		return res;
	} catch (const CLI::ParseError &e) {
		res.report.command = "qsr";
		for (const std::string &a : args)
			if (handlers.count(a)) {
				res.report.command = a;
				break;
			}
		res.report.verdict = Verdict::fail;
		res.report.diagnostics.push_back({"USAGE", "arguments", e.what()});
		res.exit_code = 2;
	}

	if (res.exit_code == 0) {
		std::string name = app.get_subcommands().front()->get_name();
		const CLI::Option *set_opt = app.get_subcommands().front()->get_option_no_throw("--set");
		o.set_given = set_opt && set_opt->count() > 0;
		try {
			res.report = handlers.at(name)(o);
			res.exit_code = exit_code(res.report.verdict);
		} catch (const CommandError &e) {
			res.report = Report{};
			res.report.verdict = Verdict::fail;
			res.report.diagnostics = e.diagnostics;
			res.exit_code = 2;
		} catch (const CapacityError &e) {
			res.report = Report{};
			res.report.verdict = Verdict::fail;
			res.report.diagnostics.push_back({"UNIVERSE_TOO_LARGE", "universe", e.what()});
			res.exit_code = 2;
		} catch (const StructuralError &e) {
			res.report = Report{};
			res.report.verdict = Verdict::fail;
			res.report.diagnostics.push_back({"STRUCTURAL_ERROR", name, e.what()});
			res.exit_code = 2;
		}
		res.report.command = name;
	}
	res.report.elapsed_ms = std::chrono::duration<double, std::milli>(
		std::chrono::steady_clock::now() - start).count();

	if (o.format == "records")
		res.output = render_records(res.report);
	else if (res.exit_code == 0 && !instance_text.empty() && o.output.empty())
		res.output = instance_text;
	else
		res.output = render_text(res.report);
	if (o.format == "records" && !instance_text.empty() && o.output.empty()) {
		/* keep the instance available in machine mode */
		res.report.add("instance", instance_text);
		res.output = render_records(res.report);
	}
	return res;
}

} // namespace qsr
