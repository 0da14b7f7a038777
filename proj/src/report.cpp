/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsr {

using nlohmann::ordered_json;

std::optional<std::string> Report::find(std::string_view key) const
{
	for (const auto &[k, v] : witnesses)
		if (k == key)
			return v;
	return std::nullopt;
}

int exit_code(Verdict v)
{
	switch (v) {
	case Verdict::pass:
	case Verdict::found:
		return 0;
	case Verdict::fail:
	case Verdict::none:
		return 1;
	case Verdict::skipped:
	case Verdict::inconclusive:
		return 3;
	}
	return 1;
}

std::string render_text(const Report &r)
{
	std::ostringstream out;
	out << r.command << ": " << to_string(r.verdict) << "\n";
	for (const auto &[k, v] : r.witnesses)
		out << "  " << k << ": " << v << "\n";
	for (const Diagnostic &d : r.diagnostics)
		out << "  error " << d.code << " at " << d.field << ": " << d.message << "\n";
	return out.str();
}

std::string render_records(const Report &r)
{
	std::string out;
	ordered_json head;
	head["record"] = "report";
	head["command"] = r.command;
	head["verdict"] = std::string(to_string(r.verdict));
	if (r.seed)
		head["seed"] = std::to_string(*r.seed);
	head["version"] = r.version;
	out += head.dump() + "\n";
	for (const auto &[k, v] : r.witnesses) {
		ordered_json w;
		w["record"] = "witness";
		w["key"] = k;
		w["value"] = v;
		out += w.dump() + "\n";
	}
	for (const Diagnostic &d : r.diagnostics) {
		ordered_json w;
		w["record"] = "diagnostic";
		w["code"] = d.code;
		w["field"] = d.field;
		w["message"] = d.message;
		out += w.dump() + "\n";
	}
	ordered_json t;
	t["record"] = "timing";
	t["elapsed_ms"] = r.elapsed_ms;
	out += t.dump() + "\n";
	return out;
}

Report parse_records(std::string_view text)
{
	Report r;
	bool have_head = false;
	std::istringstream in{std::string(text)};
	std::string line;
	try {
		while (std::getline(in, line)) {
			if (line.empty())
				continue;
			ordered_json j = ordered_json::parse(line);
			std::string kind = j.at("record").get<std::string>();
			if (kind == "report") {
				r.command = j.at("command").get<std::string>();
				auto v = parse_verdict(j.at("verdict").get<std::string>());
				if (!v)
					throw std::invalid_argument("unknown verdict");
				r.verdict = *v;
				if (j.contains("seed"))
					r.seed = std::stoull(j["seed"].get<std::string>());
				r.version = j.at("version").get<std::string>();
				have_head = true;
			} else if (kind == "witness") {
				r.add(j.at("key").get<std::string>(), j.at("value").get<std::string>());
			} else if (kind == "diagnostic") {
				r.diagnostics.push_back({j.at("code").get<std::string>(),
				                         j.at("field").get<std::string>(),
				                         j.at("message").get<std::string>()});
			} else if (kind == "timing") {
				r.elapsed_ms = j.at("elapsed_ms").get<double>();
			} else {
				throw std::invalid_argument("unknown record kind " + kind);
			}
		}
	} catch (const ordered_json::exception &e) {
		throw std::invalid_argument(std::string("malformed record: ") + e.what());
	}
	if (!have_head)
		throw std::invalid_argument("no report record");
	return r;
}

} // namespace qsr
