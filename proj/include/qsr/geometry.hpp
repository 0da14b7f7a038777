/* SPDX-License-Identifier: Apache-2.0 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsr/measure_value.hpp"
#include "qsr/rng.hpp"
#include "qsr/set_core.hpp"

namespace qsr {

/* ---- circle arcs ----
 *
 * Points of the circle are parametrized by rationals modulo 2 (units of
 * pi), so the circumference is 2. Arc(s, e) is the point set (s, e] taken
 * modulo 2. */

class Arc {
public:
	/* Requires 0 < end - start <= 2 (std::invalid_argument otherwise). The
	 * stored form has start in [0, 2); the full circle is stored as (0, 2]. */
	Arc(Rational start, Rational end);

	static Arc full() { return Arc(0, 2); }

	const Rational &start() const { return start_; }
	const Rational &end() const { return end_; }
	Rational length() const { return end_ - start_; }
	bool is_full() const { return length() == 2; }

	/* p in (start, end] after shifting p by a multiple of 2. */
	bool contains(const Rational &p) const;

	/* The complementary arc; nullopt for the full circle. */
	std::optional<Arc> complement() const;

	friend bool operator==(const Arc &a, const Arc &b)
	{
		return a.start_ == b.start_ && a.end_ == b.end_;
	}

	std::string to_string() const;

private:
	Rational start_, end_;
};

/* x - 2*floor(x/2), in [0, 2). */
Rational mod2(const Rational &x);

/* Pairwise-disjoint arcs, adjacent pieces merged, sorted by start. */
struct ArcSet {
	std::vector<Arc> pieces;

	/* Merges pieces that touch modulo 2 and sorts; the input pieces must be
	 * pairwise disjoint. */
	static ArcSet normalized(std::vector<Arc> pieces);

	bool empty() const { return pieces.empty(); }
	bool contains(const Rational &p) const;
	Rational length() const;
	std::string to_string() const;

	friend bool operator==(const ArcSet &, const ArcSet &) = default;
};

ArcSet arc_intersect(const Arc &a, const Arc &b);
/* a ∩ b^c */
ArcSet arc_intersect_complement(const Arc &a, const Arc &b);

/* "(pi, 3pi/2]" style rendering of an arc given in pi units. */
std::string format_pi(const Rational &x);
std::string format_pi(const Arc &a);

/* ---- rectangles ----
 *
 * (x1, x2] × (y1, y2], axis-aligned, exact rational coordinates. */

struct Box {
	Rational x1, x2, y1, y2;

	Rational base() const { return x2 - x1; }
	Rational height() const { return y2 - y1; }
	Rational area() const { return base() * height(); }
	bool is_square() const { return base() == height(); }
	bool contains(const Rational &x, const Rational &y) const
	{
		return x1 < x && x <= x2 && y1 < y && y <= y2;
	}
};

/* A class rectangle: nondegenerate with base != height. */
class Rect {
public:
	/* std::invalid_argument on a degenerate or square box. */
	Rect(Rational x1, Rational x2, Rational y1, Rational y2);
	explicit Rect(const Box &b);

	const Box &box() const { return box_; }
	Rational base() const { return box_.base(); }
	Rational height() const { return box_.height(); }
	Rational area() const { return box_.area(); }
	bool contains(const Rational &x, const Rational &y) const
	{
		return box_.contains(x, y);
	}

	friend bool operator==(const Rect &a, const Rect &b)
	{
		return a.box_.x1 == b.box_.x1 && a.box_.x2 == b.box_.x2
		    && a.box_.y1 == b.box_.y1 && a.box_.y2 == b.box_.y2;
	}

	std::string to_string() const;

private:
	Box box_;
};

struct RectSet {
	std::vector<Rect> pieces;

	bool empty() const { return pieces.empty(); }
	bool contains(const Rational &x, const Rational &y) const;
	Rational area() const;
	std::string to_string() const;
};

/* A nondegenerate box as class rectangles: itself when base != height,
 * otherwise (x1,x2]×(y1, y1+s/3] and (x1,x2]×(y1+s/3, y2]. */
RectSet class_pieces(const Box &b);

RectSet rect_intersect(const Rect &a, const Rect &b);
/* a \ b: full-height strips left and right of b, then the parts of the
 * middle column below and above b, each made class-valid. */
RectSet rect_difference(const Rect &a, const Rect &b);

MeasureValue piece_measure(const ArcSet &s);
MeasureValue piece_measure(const RectSet &s);

/* ---- randomized verification ---- */

enum class ArcSampling {
	wrapping,    // arbitrary arcs on the circle
	restricted,  // arcs (s, e] with 0 <= s < e <= 2, no wraparound
};

struct GeometryReport {
	Verdict verdict = Verdict::pass;
	std::size_t samples = 0;
	std::size_t max_pieces = 0;               // over intersections and differences
	std::size_t multi_piece_intersections = 0;
	bool witness_reproduced = false;          // the not-a-semi-ring witness
	std::string failure;
};

/* Decomposition soundness for one pair: piece counts, disjointness, length
 * additivity, and agreement with pointwise membership at boundary-derived
 * and `random_probes` random probes. Empty string when sound. */
std::string check_arc_pair(const Arc &a, const Arc &b, SplitMix &rng,
                           std::size_t random_probes);
std::string check_rect_pair(const Rect &a, const Rect &b, SplitMix &rng,
                            std::size_t random_probes);

Arc random_arc(SplitMix &rng, ArcSampling mode = ArcSampling::wrapping);
Rect random_rect(SplitMix &rng);

/* Samples `samples` arc pairs, pair i drawn from its own stream derived from
 * (seed, i). In wrapping mode also reproduces the two-piece intersection
 * of (0, 3/2] and (1, 5/2]; in restricted mode every intersection must be
 * a single arc. */
GeometryReport verify_arc_qsr(std::size_t samples, std::uint64_t seed,
                              ArcSampling mode = ArcSampling::wrapping,
                              std::size_t random_probes = 1000);

/* Same for rectangles; the witness is a pair whose intersection is a square
 * and so needs two class pieces. */
GeometryReport verify_rect_qsr(std::size_t samples, std::uint64_t seed,
                               std::size_t random_probes = 1000);

} // namespace qsr
