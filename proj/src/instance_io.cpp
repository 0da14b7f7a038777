/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace qsr {

using nlohmann::json;

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
: std::runtime_error(diagnostics.empty()
                     ? std::string("instance parse error")
                     : diagnostics.front().code + " at " + diagnostics.front().field
                       + ": " + diagnostics.front().message)
, diagnostics_(std::move(diagnostics))
{}

std::string subset_key(const Universe &u, const Subset &s)
{
	std::vector<std::string> labels;
	for (std::size_t i : s.indices())
		labels.push_back(u.label(i));
	std::sort(labels.begin(), labels.end());
	std::string key;
	for (const std::string &l : labels) {
		if (!key.empty())
			key += ",";
		key += l;
	}
	return key;
}

std::optional<Subset> parse_subset_key(const Universe &u, std::string_view key)
{
	Mask m = 0;
	if (key.empty())
		return Subset::empty(u.size());
	std::size_t pos = 0;
	for (;;) {
		std::size_t comma = key.find(',', pos);
		std::string_view label = key.substr(pos, comma - pos);
		auto i = u.index_of(label);
		if (!i || (m >> *i) & 1u)
			return std::nullopt;
		m |= Mask(1) << *i;
		if (comma == std::string_view::npos)
			break;
		pos = comma + 1;
	}
	return Subset(u.size(), m);
}

namespace {

std::string in_quotes(const std::string &s) { return "\"" + s + "\""; }

std::string line_and_column(std::string_view text, std::size_t byte)
{
	std::size_t line = 1, col = 1;
	for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
		if (text[i] == '\n') {
			++line;
			col = 1;
		} else
			++col;
	}
	return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

ParseResult parse_instance_text(std::string_view text, ParseOptions opts)
{
	ParseResult res;
	auto &diags = res.diagnostics;
	auto report = [&](std::string code, std::string field, std::string msg) {
		diags.push_back({std::move(code), std::move(field), std::move(msg)});
	};

	json doc;
	try {
		doc = json::parse(text);
	} catch (const json::parse_error &e) {
		report("MALFORMED_FILE", line_and_column(text, e.byte ? e.byte - 1 : 0),
		       e.what());
		return res;
	}
	if (!doc.is_object()) {
		report("MALFORMED_FILE", "<root>", "expected an object");
		return res;
	}
	for (const char *f : {"universe", "class", "measure"})
		if (!doc.contains(f))
			report("MISSING_FIELD", f, std::string("missing field '") + f + "'");
	if (!diags.empty())
		return res;

	/* universe */
	const json &ju = doc["universe"];
	std::vector<std::string> labels;
	if (!ju.is_array()) {
		report("MALFORMED_FILE", "universe", "expected an array of labels");
		return res;
	}
	{
		std::unordered_set<std::string> seen;
		for (std::size_t i = 0; i < ju.size(); ++i) {
			std::string field = "universe[" + std::to_string(i) + "]";
			if (!ju[i].is_string()) {
				report("INVALID_LABEL", field, "label must be a string");
				continue;
			}
			std::string l = ju[i].get<std::string>();
			if (l.empty() || l.find(',') != std::string::npos)
				report("INVALID_LABEL", field,
				       "labels must be nonempty and must not contain ','");
			else if (!seen.insert(l).second)
				report("DUPLICATE_LABEL", field, "duplicate label " + in_quotes(l));
			else
				labels.push_back(l);
		}
	}
	if (labels.empty() && diags.empty())
		report("MALFORMED_FILE", "universe", "universe must not be empty");
	std::size_t cap = std::min(opts.max_universe, kHardMaxUniverse);
	if (labels.size() > cap)
		report("UNIVERSE_TOO_LARGE", "universe",
		       std::to_string(labels.size()) + " atoms exceeds the cap of "
		       + std::to_string(cap));
	if (!diags.empty())
		return res;
	Universe u(labels, cap);

	/* class */
	const json &jc = doc["class"];
	if (!jc.is_array()) {
		report("MALFORMED_FILE", "class", "expected an array of subsets");
		return res;
	}
	std::vector<Subset> members;
	std::unordered_set<Mask> member_masks;
	for (std::size_t i = 0; i < jc.size(); ++i) {
		std::string field = "class[" + std::to_string(i) + "]";
		if (!jc[i].is_array()) {
			report("MALFORMED_FILE", field, "expected an array of labels");
			continue;
		}
		Mask m = 0;
		bool ok = true;
		for (std::size_t j = 0; j < jc[i].size(); ++j) {
			std::string sub = field + "[" + std::to_string(j) + "]";
			const json &jl = jc[i][j];
			if (!jl.is_string()) {
				report("INVALID_LABEL", sub, "label must be a string");
				ok = false;
				continue;
			}
			auto idx = u.index_of(jl.get<std::string>());
			if (!idx) {
				report("UNKNOWN_LABEL", sub,
				       "label " + in_quotes(jl.get<std::string>()) + " is not in the universe");
				ok = false;
			} else if ((m >> *idx) & 1u) {
				report("DUPLICATE_LABEL", sub,
				       "label " + in_quotes(jl.get<std::string>()) + " repeated in subset");
				ok = false;
			} else
				m |= Mask(1) << *idx;
		}
		if (!ok)
			continue;
		if (!member_masks.insert(m).second) {
			report("DUPLICATE_SUBSET", field,
			       "subset {" + subset_key(u, Subset(u.size(), m)) + "} listed twice");
			continue;
		}
		members.emplace_back(u.size(), m);
	}
	if (!member_masks.contains(0))
		report("MISSING_EMPTY_SET", "class", "the class must contain the empty set []");

	/* measure */
	const json &jm = doc["measure"];
	if (!jm.is_object()) {
		report("MALFORMED_FILE", "measure", "expected an object keyed by subset");
		return res;
	}
	std::map<Mask, MeasureValue> values;
	for (const auto &[key, jv] : jm.items()) {
		std::string field = "measure[" + in_quotes(key) + "]";
		auto s = parse_subset_key(u, key);
		if (!s) {
			report("UNKNOWN_LABEL", field, "key does not name a subset of the universe");
			continue;
		}
		std::optional<MeasureValue> v;
		if (jv.is_string())
			v = MeasureValue::parse(jv.get<std::string>());
		if (!v)
			report("MALFORMED_FRACTION", field,
			       "expected a string \"p/q\", \"p\" or \"inf\" with p >= 0, q > 0; got "
			       + jv.dump());
		if (!member_masks.contains(s->mask())) {
			report("EXTRA_MEASURE", field, "key is not a class member");
			continue;
		}
		if (values.contains(s->mask())) {
			report("DUPLICATE_SUBSET", field, "subset given more than one value");
			continue;
		}
		if (!v)
			continue;
		if (s->empty() && *v != MeasureValue(0))
			report("NONZERO_EMPTY_MEASURE", field, "the empty set must have measure 0");
		values.emplace(s->mask(), *v);
	}
	for (const Subset &m : members)
		if (!values.contains(m.mask()) && !jm.contains(subset_key(u, m)))
			report("MISSING_MEASURE", "measure",
			       "no value for class member {" + subset_key(u, m) + "}");
	if (!diags.empty())
		return res;

	Premeasure mu;
	for (const Subset &m : members)
		mu.push_back(values.at(m.mask()));
	res.instance.emplace(std::move(u), SetClass(labels.size(), std::move(members)),
	                     std::move(mu));
	return res;
}

ParseResult parse_instance_file(const std::filesystem::path &path, ParseOptions opts)
{
	std::ifstream in(path);
	if (!in) {
		ParseResult res;
		res.diagnostics.push_back({"IO_ERROR", path.string(), "cannot open file"});
		return res;
	}
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_instance_text(ss.str(), opts);
}

Instance parse_instance(const std::filesystem::path &path, ParseOptions opts)
{
	ParseResult res = parse_instance_file(path, opts);
	if (!res.instance)
		throw ParseError(std::move(res.diagnostics));
	return std::move(*res.instance);
}

std::string serialize_instance(const Instance &inst)
{
	const Universe &u = inst.universe();
	nlohmann::ordered_json doc;
	doc["universe"] = u.labels();
	nlohmann::ordered_json cls = nlohmann::ordered_json::array();
	std::map<std::string, std::string> measure;
	for (std::size_t i = 0; i < inst.set_class().size(); ++i) {
		const Subset &s = inst.set_class()[i];
		std::vector<std::string> labels;
		for (std::size_t a : s.indices())
			labels.push_back(u.label(a));
		std::sort(labels.begin(), labels.end());
		cls.push_back(labels);
		measure.emplace(subset_key(u, s), inst.mu(i).to_string());
	}
	doc["class"] = std::move(cls);
	doc["measure"] = measure;
	return doc.dump(2) + "\n";
}

} // namespace qsr
