/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/measure_value.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qsr {

MeasureValue::MeasureValue(long v)
: MeasureValue(finite(Rational(v)))
{}

MeasureValue MeasureValue::finite(Rational v)
{
	v.canonicalize();
	if (sgn(v) < 0)
		throw std::invalid_argument("measure values must be nonnegative");
	MeasureValue r;
	r.value_ = std::move(v);
	return r;
}

MeasureValue MeasureValue::infinite()
{
	MeasureValue r;
	r.infinite_ = true;
	return r;
}

const Rational &MeasureValue::value() const
{
	if (infinite_)
		throw std::logic_error("value() of an infinite measure");
	return value_;
}

std::string MeasureValue::to_string() const
{
	if (infinite_)
		return "inf";
	if (value_.get_den() == 1)
		return value_.get_num().get_str();
	return value_.get_str();
}

namespace {

bool all_digits(std::string_view s)
{
	return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
		return std::isdigit(c) != 0;
	});
}

} // namespace

std::optional<MeasureValue> MeasureValue::parse(std::string_view text)
{
	if (text == "inf")
		return infinite();
	auto slash = text.find('/');
	std::string_view num = text.substr(0, slash);
	std::string_view den = slash == std::string_view::npos
	                     ? std::string_view("1") : text.substr(slash + 1);
	if (!all_digits(num) || !all_digits(den))
		return std::nullopt;
	mpz_class p(std::string(num), 10), q(std::string(den), 10);
	if (q == 0)
		return std::nullopt;
	return finite(Rational(p, q));
}

MeasureValue operator+(const MeasureValue &a, const MeasureValue &b)
{
	if (a.infinite_ || b.infinite_)
		return MeasureValue::infinite();
	MeasureValue r;
	r.value_ = a.value_ + b.value_;
	return r;
}

MeasureValue &MeasureValue::operator+=(const MeasureValue &o)
{
	if (infinite_)
		return *this;
	if (o.infinite_) {
		infinite_ = true;
		value_ = 0;
		return *this;
	}
	value_ += o.value_;
	return *this;
}

bool operator==(const MeasureValue &a, const MeasureValue &b)
{
	if (a.infinite_ || b.infinite_)
		return a.infinite_ == b.infinite_;
	return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const MeasureValue &a, const MeasureValue &b)
{
	if (a.infinite_ || b.infinite_)
		return a.infinite_ <=> b.infinite_;
	int c = cmp(a.value_, b.value_);
	return c <=> 0;
}

MeasureValue measure_sum(std::span<const MeasureValue> values)
{
	MeasureValue total;
	for (const MeasureValue &v : values)
		total += v;
	return total;
}

std::ostream &operator<<(std::ostream &os, const MeasureValue &v)
{
	return os << v.to_string();
}

} // namespace qsr
