/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qsr {

using Rational = mpq_class;

/* Element of [0, +inf]: an exact nonnegative rational in lowest terms, or
 * +inf. Infinite is absorbing under addition and greater than every finite
 * value. */
class MeasureValue {
public:
	MeasureValue() = default;
	MeasureValue(long v);

	/* Throws std::invalid_argument on negative input. The value is
	 * canonicalized. */
	static MeasureValue finite(Rational v);
	static MeasureValue infinite();

	bool is_infinite() const { return infinite_; }
	bool is_finite() const { return !infinite_; }

	/* The rational value; throws std::logic_error when infinite. */
	const Rational &value() const;

	/* "inf", "p" when the denominator is 1, otherwise "p/q". */
	std::string to_string() const;

	/* Accepts "inf", a decimal integer, or "p/q" with q > 0. Signs, spaces
	 * and any other characters are rejected. */
	static std::optional<MeasureValue> parse(std::string_view text);

	friend MeasureValue operator+(const MeasureValue &a, const MeasureValue &b);
	MeasureValue &operator+=(const MeasureValue &o);

	friend bool operator==(const MeasureValue &a, const MeasureValue &b);
	friend std::strong_ordering operator<=>(const MeasureValue &a,
	                                        const MeasureValue &b);

private:
	bool infinite_ = false;
	Rational value_ = 0;
};

/* Exact sum; the empty sum is 0. */
MeasureValue measure_sum(std::span<const MeasureValue> values);

std::ostream &operator<<(std::ostream &os, const MeasureValue &v);

} // namespace qsr
