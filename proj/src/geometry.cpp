/* SPDX-License-Identifier: Apache-2.0 */

#include "qsr/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsr {

/* ---- arcs ---- */

Rational mod2(const Rational &x)
{
	mpz_class k;
	mpz_class twice_den = 2 * x.get_den();
	mpz_fdiv_q(k.get_mpz_t(), x.get_num().get_mpz_t(), twice_den.get_mpz_t());
	Rational r = x - Rational(2 * k);
	r.canonicalize();
	return r;
}

Arc::Arc(Rational start, Rational end)
{
	start.canonicalize();
	end.canonicalize();
	Rational len = end - start;
	if (sgn(len) <= 0 || len > 2)
		throw std::invalid_argument("arc length must lie in (0, 2]");
	if (len == 2) {
		start_ = 0;
		end_ = 2;
		return;
	}
	start_ = mod2(start);
	end_ = start_ + len;
}

bool Arc::contains(const Rational &p) const
{
	Rational d = mod2(p - start_);
	if (sgn(d) == 0)
		d = 2;
	return d <= length();
}

std::optional<Arc> Arc::complement() const
{
	if (is_full())
		return std::nullopt;
	return Arc(end_, start_ + 2);
}

namespace {

std::string rational_str(const Rational &q)
{
	if (q.get_den() == 1)
		return q.get_num().get_str();
	return q.get_str();
}

} // namespace

std::string Arc::to_string() const
{
	return "(" + rational_str(start_) + ", " + rational_str(end_) + "]";
}

ArcSet ArcSet::normalized(std::vector<Arc> pieces)
{
	for (bool changed = true; changed;) {
		changed = false;
		for (std::size_t i = 0; i < pieces.size() && !changed; ++i)
			for (std::size_t j = 0; j < pieces.size() && !changed; ++j) {
				if (i == j || sgn(mod2(pieces[i].end() - pieces[j].start())) != 0)
					continue;
				Arc merged(pieces[i].start(), pieces[i].end() + pieces[j].length());
				pieces[i] = merged;
				pieces.erase(pieces.begin() + static_cast<long>(j));
				changed = true;
			}
	}
	std::sort(pieces.begin(), pieces.end(), [](const Arc &a, const Arc &b) {
		return a.start() < b.start();
	});
	return ArcSet{std::move(pieces)};
}

bool ArcSet::contains(const Rational &p) const
{
	return std::any_of(pieces.begin(), pieces.end(),
	                   [&](const Arc &a) { return a.contains(p); });
}

Rational ArcSet::length() const
{
	Rational total = 0;
	for (const Arc &a : pieces)
		total += a.length();
	return total;
}

std::string ArcSet::to_string() const
{
	if (pieces.empty())
		return "∅";
	std::string out;
	for (const Arc &a : pieces)
		out += (out.empty() ? "" : " ∪ ") + a.to_string();
	return out;
}

ArcSet arc_intersect(const Arc &a, const Arc &b)
{
	/* With both starts in [0, 2) only the shifts b - 2, b, b + 2 can meet
	 * a on the real line, and those lifts are pairwise disjoint. */
	std::vector<Arc> pieces;
	for (int k = -1; k <= 1; ++k) {
		Rational lo = std::max(a.start(), Rational(b.start() + 2 * k));
		Rational hi = std::min(a.end(), Rational(b.end() + 2 * k));
		if (lo < hi)
			pieces.emplace_back(lo, hi);
	}
	return ArcSet::normalized(std::move(pieces));
}

ArcSet arc_intersect_complement(const Arc &a, const Arc &b)
{
	auto c = b.complement();
	if (!c)
		return {};
	return arc_intersect(a, *c);
}

std::string format_pi(const Rational &x)
{
	if (sgn(x) == 0)
		return "0";
	mpz_class p = x.get_num(), q = x.get_den();
	std::string out = p == 1 ? "π" : p.get_str() + "π";
	if (q != 1)
		out += "/" + q.get_str();
	return out;
}

std::string format_pi(const Arc &a)
{
	return "(" + format_pi(a.start()) + ", " + format_pi(a.end()) + "]";
}

/* ---- rectangles ---- */

Rect::Rect(Rational x1, Rational x2, Rational y1, Rational y2)
: Rect(Box{std::move(x1), std::move(x2), std::move(y1), std::move(y2)})
{}

Rect::Rect(const Box &b)
: box_(b)
{
	for (Rational *v : {&box_.x1, &box_.x2, &box_.y1, &box_.y2})
		v->canonicalize();
	if (!(box_.x1 < box_.x2) || !(box_.y1 < box_.y2))
		throw std::invalid_argument("degenerate rectangle");
	if (box_.is_square())
		throw std::invalid_argument("class rectangles must have base != height");
}

std::string Rect::to_string() const
{
	return "(" + rational_str(box_.x1) + ", " + rational_str(box_.x2) + "] x ("
	     + rational_str(box_.y1) + ", " + rational_str(box_.y2) + "]";
}

bool RectSet::contains(const Rational &x, const Rational &y) const
{
	return std::any_of(pieces.begin(), pieces.end(),
	                   [&](const Rect &r) { return r.contains(x, y); });
}

Rational RectSet::area() const
{
	Rational total = 0;
	for (const Rect &r : pieces)
		total += r.area();
	return total;
}

std::string RectSet::to_string() const
{
	if (pieces.empty())
		return "∅";
	std::string out;
	for (const Rect &r : pieces)
		out += (out.empty() ? "" : " ∪ ") + r.to_string();
	return out;
}

RectSet class_pieces(const Box &b)
{
	if (!b.is_square())
		return {{Rect(b)}};
	/* heights s/3 and 2s/3 differ from each other and from the base s */
	Rational cut = b.y1 + b.base() / 3;
	return {{Rect(b.x1, b.x2, b.y1, cut), Rect(b.x1, b.x2, cut, b.y2)}};
}

namespace {

std::optional<Box> overlap(const Box &a, const Box &b)
{
	Box c{std::max(a.x1, b.x1), std::min(a.x2, b.x2),
	      std::max(a.y1, b.y1), std::min(a.y2, b.y2)};
	if (!(c.x1 < c.x2) || !(c.y1 < c.y2))
		return std::nullopt;
	return c;
}

void append(RectSet &out, const Box &b)
{
	if (!(b.x1 < b.x2) || !(b.y1 < b.y2))
		return;
	RectSet p = class_pieces(b);
	out.pieces.insert(out.pieces.end(), p.pieces.begin(), p.pieces.end());
}

} // namespace

RectSet rect_intersect(const Rect &a, const Rect &b)
{
	auto c = overlap(a.box(), b.box());
	if (!c)
		return {};
	return class_pieces(*c);
}

RectSet rect_difference(const Rect &a, const Rect &b)
{
	const Box &o = a.box();
	auto c = overlap(o, b.box());
	if (!c)
		return {{a}};
	RectSet out;
	append(out, Box{o.x1, c->x1, o.y1, o.y2});
	append(out, Box{c->x2, o.x2, o.y1, o.y2});
	append(out, Box{c->x1, c->x2, o.y1, c->y1});
	append(out, Box{c->x1, c->x2, c->y2, o.y2});
	return out;
}

MeasureValue piece_measure(const ArcSet &s)
{
	return MeasureValue::finite(s.length());
}

MeasureValue piece_measure(const RectSet &s)
{
	return MeasureValue::finite(s.area());
}

/* ---- randomized verification ---- */

namespace {

Rational random_rational(SplitMix &rng, long max_den, long lo_num_per_den,
                         long hi_num_per_den)
{
	long q = rng.between(1, max_den);
	Rational r(rng.between(lo_num_per_den * q, hi_num_per_den * q), q);
	r.canonicalize();
	return r;
}

void sort_unique(std::vector<Rational> &v)
{
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
}

/* Breakpoints, midpoints between consecutive breakpoints and points beyond
 * both ends: membership in any finite union of half-open intervals over
 * these breakpoints is decided by this set. */
std::vector<Rational> critical_points(std::vector<Rational> v)
{
	sort_unique(v);
	std::vector<Rational> out = v;
	for (std::size_t i = 0; i + 1 < v.size(); ++i)
		out.push_back((v[i] + v[i + 1]) / 2);
	if (!v.empty()) {
		out.push_back(v.front() - 1);
		out.push_back(v.back() + 1);
	}
	sort_unique(out);
	return out;
}

std::size_t count_containing(const ArcSet &s, const Rational &p)
{
	return static_cast<std::size_t>(std::count_if(
		s.pieces.begin(), s.pieces.end(), [&](const Arc &a) { return a.contains(p); }));
}

std::size_t count_containing(const RectSet &s, const Rational &x, const Rational &y)
{
	return static_cast<std::size_t>(std::count_if(
		s.pieces.begin(), s.pieces.end(),
		[&](const Rect &r) { return r.contains(x, y); }));
}

} // namespace

Arc random_arc(SplitMix &rng, ArcSampling mode)
{
	if (mode == ArcSampling::restricted) {
		long q = rng.between(1, 12);
		long s = rng.between(0, 2 * q - 1);
		long e = rng.between(s + 1, 2 * q);
		return Arc(Rational(s, q), Rational(e, q));
	}
	if (rng.one_in(20))
		return Arc::full();
	Rational start = random_rational(rng, 12, 0, 2);
	long q = rng.between(1, 12);
	Rational len(rng.between(1, 2 * q), q);
	return Arc(start, start + len);
}

Rect random_rect(SplitMix &rng)
{
	/* integer grids make square intersections common */
	bool grid = rng.one_in(2);
	for (;;) {
		Rational c[4];
		for (Rational &v : c)
			v = grid ? Rational(rng.between(0, 4)) : random_rational(rng, 6, 0, 6);
		Box b{std::min(c[0], c[1]), std::max(c[0], c[1]),
		      std::min(c[2], c[3]), std::max(c[2], c[3])};
		if (b.x1 < b.x2 && b.y1 < b.y2 && !b.is_square())
			return Rect(b);
	}
}

std::string check_arc_pair(const Arc &a, const Arc &b, SplitMix &rng,
                           std::size_t random_probes)
{
	ArcSet inter = arc_intersect(a, b);
	ArcSet diff = arc_intersect_complement(a, b);
	if (inter.pieces.size() > 2 || diff.pieces.size() > 2)
		return "more than two pieces";
	if (inter.length() + diff.length() != a.length())
		return "length not conserved";
	for (const ArcSet *s : {&inter, &diff})
		for (const Arc &p : s->pieces)
			if (sgn(p.start()) < 0 || p.start() >= 2)
				return "piece not in canonical form";

	std::vector<Rational> breaks;
	for (const Arc *x : {&a, &b}) {
		breaks.push_back(mod2(x->start()));
		breaks.push_back(mod2(x->end()));
	}
	for (const ArcSet *s : {&inter, &diff})
		for (const Arc &p : s->pieces) {
			breaks.push_back(mod2(p.start()));
			breaks.push_back(mod2(p.end()));
		}
	std::vector<Rational> probes = critical_points(breaks);
	for (std::size_t i = 0; i < random_probes; ++i)
		probes.push_back(random_rational(rng, 997, 0, 2));

	for (const Rational &p : probes) {
		bool in_a = a.contains(p), in_b = b.contains(p);
		if (count_containing(inter, p) != (in_a && in_b ? 1u : 0u))
			return "intersection disagrees with membership at " + p.get_str();
		if (count_containing(diff, p) != (in_a && !in_b ? 1u : 0u))
			return "difference disagrees with membership at " + p.get_str();
	}
	return {};
}

std::string check_rect_pair(const Rect &a, const Rect &b, SplitMix &rng,
                            std::size_t random_probes)
{
	RectSet inter = rect_intersect(a, b);
	RectSet diff = rect_difference(a, b);
	if (inter.area() + diff.area() != a.area())
		return "area not conserved";
	for (const RectSet *s : {&inter, &diff})
		for (const Rect &r : s->pieces)
			if (r.base() == r.height())
				return "square piece";

	std::vector<Rational> xs, ys;
	auto collect = [&](const Rect &r) {
		xs.push_back(r.box().x1);
		xs.push_back(r.box().x2);
		ys.push_back(r.box().y1);
		ys.push_back(r.box().y2);
	};
	collect(a);
	collect(b);
	for (const RectSet *s : {&inter, &diff})
		for (const Rect &r : s->pieces)
			collect(r);
	xs = critical_points(xs);
	ys = critical_points(ys);
	std::vector<std::pair<Rational, Rational>> probes;
	for (const Rational &x : xs)
		for (const Rational &y : ys)
			probes.emplace_back(x, y);
	for (std::size_t i = 0; i < random_probes; ++i)
		probes.emplace_back(random_rational(rng, 997, -1, 7),
		                    random_rational(rng, 997, -1, 7));

	for (const auto &[x, y] : probes) {
		bool in_a = a.contains(x, y), in_b = b.contains(x, y);
		if (count_containing(inter, x, y) != (in_a && in_b ? 1u : 0u))
			return "intersection disagrees with membership at (" + x.get_str()
			     + ", " + y.get_str() + ")";
		if (count_containing(diff, x, y) != (in_a && !in_b ? 1u : 0u))
			return "difference disagrees with membership at (" + x.get_str()
			     + ", " + y.get_str() + ")";
	}
	return {};
}

GeometryReport verify_arc_qsr(std::size_t samples, std::uint64_t seed,
                              ArcSampling mode, std::size_t random_probes)
{
	GeometryReport rep;
	rep.samples = samples;
	for (std::size_t i = 0; i < samples; ++i) {
		SplitMix rng = SplitMix::for_trial(seed, i);
		Arc a = random_arc(rng, mode);
		Arc b = random_arc(rng, mode);
		if (std::string why = check_arc_pair(a, b, rng, random_probes); !why.empty()) {
			rep.verdict = Verdict::fail;
			rep.failure = "pair " + std::to_string(i) + " " + a.to_string() + ", "
			            + b.to_string() + ": " + why;
			return rep;
		}
		std::size_t ni = arc_intersect(a, b).pieces.size();
		std::size_t nd = arc_intersect_complement(a, b).pieces.size();
		rep.max_pieces = std::max({rep.max_pieces, ni, nd});
		if (ni > 1)
			++rep.multi_piece_intersections;
	}
	if (mode == ArcSampling::wrapping) {
		ArcSet w = arc_intersect(Arc(0, Rational(3, 2)), Arc(1, Rational(5, 2)));
		rep.witness_reproduced = w.pieces.size() == 2;
		if (!rep.witness_reproduced) {
			rep.verdict = Verdict::fail;
			rep.failure = "two-piece intersection witness not reproduced";
		}
	} else if (rep.multi_piece_intersections != 0) {
		rep.verdict = Verdict::fail;
		rep.failure = "restricted arcs produced a multi-piece intersection";
	}
	return rep;
}

GeometryReport verify_rect_qsr(std::size_t samples, std::uint64_t seed,
                               std::size_t random_probes)
{
	GeometryReport rep;
	rep.samples = samples;
	for (std::size_t i = 0; i < samples; ++i) {
		SplitMix rng = SplitMix::for_trial(seed, i);
		Rect a = random_rect(rng);
		Rect b = random_rect(rng);
		if (std::string why = check_rect_pair(a, b, rng, random_probes); !why.empty()) {
			rep.verdict = Verdict::fail;
			rep.failure = "pair " + std::to_string(i) + " " + a.to_string() + ", "
			            + b.to_string() + ": " + why;
			return rep;
		}
		std::size_t ni = rect_intersect(a, b).pieces.size();
		std::size_t nd = rect_difference(a, b).pieces.size();
		rep.max_pieces = std::max({rep.max_pieces, ni, nd});
		if (ni > 1)
			++rep.multi_piece_intersections;
	}
	RectSet w = rect_intersect(Rect(0, 2, 0, 3), Rect(0, 3, 0, 2));
	rep.witness_reproduced = w.pieces.size() == 2 && w.area() == 4;
	if (!rep.witness_reproduced) {
		rep.verdict = Verdict::fail;
		rep.failure = "square intersection witness not reproduced";
	}
	return rep;
}

} // namespace qsr
