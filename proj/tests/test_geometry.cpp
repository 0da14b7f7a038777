/* SPDX-License-Identifier: Apache-2.0 */

#include <gtest/gtest.h>

#include "qsr/geometry.hpp"
#include "qsr/rng.hpp"

using namespace qsr;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

/* Membership of a ∩ b and a \ b at x, straight from the arc definitions. */
bool in_arc(const Rational &start, const Rational &end, const Rational &x)
{
	/* (start, end] lifted: some x + 2k in it */
	for (long k = -3; k <= 3; ++k) {
		Rational y = x + 2 * k;
		if (start < y && y <= end)
			return true;
	}
	return false;
}

} // namespace

TEST(Arc, NormalizesAndRejectsBadLengths)
{
	Arc a(r(5, 2), r(3));
	EXPECT_EQ(a.start(), r(1, 2));
	EXPECT_EQ(a.end(), r(1));
	EXPECT_THROW(Arc(1, 1), std::invalid_argument);
	EXPECT_THROW(Arc(0, r(5, 2)), std::invalid_argument);
	EXPECT_EQ(Arc(r(1, 3), r(7, 3)), Arc::full());
	EXPECT_TRUE(Arc::full().is_full());
}

TEST(Arc, Membership)
{
	Arc a(r(3, 2), r(5, 2));  // wraps through 0
	EXPECT_TRUE(a.contains(r(0)));
	EXPECT_TRUE(a.contains(r(1, 2)));
	EXPECT_FALSE(a.contains(r(3, 2)));
	EXPECT_TRUE(a.contains(r(2)));
	EXPECT_FALSE(a.contains(r(1)));
	EXPECT_EQ(mod2(r(-1, 2)), r(3, 2));
	EXPECT_EQ(mod2(r(4)), r(0));
}

TEST(Arc, WraparoundIntersectionHasTwoPieces)
{
	Arc a(0, r(3, 2)), b(1, r(5, 2));
	ArcSet i = arc_intersect(a, b);
	ASSERT_EQ(i.pieces.size(), 2u);
	/* canonical form is sorted by start */
	EXPECT_EQ(i.pieces[0], Arc(0, r(1, 2)));
	EXPECT_EQ(i.pieces[1], Arc(1, r(3, 2)));
	EXPECT_EQ(i.length(), r(1));
	EXPECT_EQ(format_pi(i.pieces[1]), "(π, 3π/2]");
	EXPECT_EQ(format_pi(i.pieces[0]), "(0, π/2]");
	ArcSet d = arc_intersect_complement(a, b);
	ASSERT_EQ(d.pieces.size(), 1u);
	EXPECT_EQ(d.pieces[0], Arc(r(1, 2), 1));
}

TEST(Arc, TouchingPiecesMerge)
{
	ArcSet s = ArcSet::normalized({Arc(r(3, 2), 2), Arc(0, r(1, 2))});
	ASSERT_EQ(s.pieces.size(), 1u);
	EXPECT_EQ(s.pieces[0], Arc(r(3, 2), r(5, 2)));
	EXPECT_TRUE(arc_intersect_complement(Arc(0, 1), Arc::full()).empty());
	EXPECT_EQ(arc_intersect(Arc::full(), Arc(0, 1)).pieces.size(), 1u);
}

TEST(Arc, RandomPairsAgreeWithLiftedMembership)
{
	for (std::uint64_t t = 0; t < 300; ++t) {
		SplitMix rng = SplitMix::for_trial(41, t);
		Arc a = random_arc(rng), b = random_arc(rng);
		ArcSet i = arc_intersect(a, b), d = arc_intersect_complement(a, b);
		EXPECT_LE(i.pieces.size(), 2u);
		EXPECT_LE(d.pieces.size(), 2u);
		EXPECT_EQ(i.length() + d.length(), a.length());
		for (long k = 0; k < 48; ++k) {
			Rational x(k, 24);
			bool ina = in_arc(a.start(), a.end(), x), inb = in_arc(b.start(), b.end(), x);
			EXPECT_EQ(i.contains(x), ina && inb);
			EXPECT_EQ(d.contains(x), ina && !inb);
		}
		EXPECT_EQ(check_arc_pair(a, b, rng, 50), "");
	}
}

TEST(Arc, RestrictedArcsIntersectInOnePiece)
{
	GeometryReport rep = verify_arc_qsr(500, 9, ArcSampling::restricted, 20);
	EXPECT_EQ(rep.verdict, Verdict::pass) << rep.failure;
	EXPECT_EQ(rep.multi_piece_intersections, 0u);
}

TEST(Rect, RejectsSquaresAndDegenerateBoxes)
{
	EXPECT_THROW(Rect(0, 1, 0, 1), std::invalid_argument);
	EXPECT_THROW(Rect(0, 0, 0, 1), std::invalid_argument);
	EXPECT_NO_THROW(Rect(0, 1, 0, 2));
	EXPECT_EQ(Rect(Box{r(2, 4), r(1), r(0), r(3, 3)}).box().x1, r(1, 2));
}

TEST(Rect, SquareIntersectionIsSplit)
{
	Rect a(0, 2, 0, 3), b(0, 3, 0, 2);
	RectSet i = rect_intersect(a, b);
	ASSERT_EQ(i.pieces.size(), 2u);
	EXPECT_EQ(i.pieces[0], Rect(0, 2, 0, r(2, 3)));
	EXPECT_EQ(i.pieces[1], Rect(0, 2, r(2, 3), 2));
	EXPECT_EQ(i.area(), r(4));
	EXPECT_EQ(piece_measure(i), MeasureValue(4));
	/* thirds: base 2 against heights 2/3 and 4/3 */
	EXPECT_NE(i.pieces[0].base(), i.pieces[0].height());
	EXPECT_NE(i.pieces[1].base(), i.pieces[1].height());
}

TEST(Rect, DifferenceAndClassPieces)
{
	Rect a(0, 4, 0, 2), b(1, 2, r(1, 2), 1);
	RectSet d = rect_difference(a, b);
	EXPECT_EQ(d.area(), a.area() - b.area());
	EXPECT_FALSE(d.contains(r(3, 2), r(3, 4)));
	EXPECT_TRUE(d.contains(r(3, 2), r(2)));
	EXPECT_TRUE(d.contains(r(4), r(1, 2)));
	for (const Rect &p : d.pieces)
		EXPECT_NE(p.base(), p.height());
	EXPECT_EQ(class_pieces(Box{r(0), r(3), r(0), r(3)}).pieces.size(), 2u);
	EXPECT_EQ(class_pieces(Box{r(0), r(3), r(0), r(2)}).pieces.size(), 1u);
	EXPECT_TRUE(rect_intersect(Rect(0, 1, 0, 2), Rect(1, 3, 0, 1)).empty());
}

TEST(Rect, RandomPairsSound)
{
	for (std::uint64_t t = 0; t < 300; ++t) {
		SplitMix rng = SplitMix::for_trial(42, t);
		Rect a = random_rect(rng), b = random_rect(rng);
		RectSet i = rect_intersect(a, b), d = rect_difference(a, b);
		EXPECT_EQ(i.area() + d.area(), a.area());
		for (long x = 0; x <= 24; ++x)
			for (long y = 0; y <= 24; y += 5) {
				Rational px(x, 4), py(y, 4);
				bool ina = a.contains(px, py), inb = b.contains(px, py);
				EXPECT_EQ(i.contains(px, py), ina && inb);
				EXPECT_EQ(d.contains(px, py), ina && !inb);
			}
		EXPECT_EQ(check_rect_pair(a, b, rng, 50), "");
	}
}

TEST(Geometry, SweepsReproduceWitnesses)
{
	GeometryReport arcs = verify_arc_qsr(200, 1, ArcSampling::wrapping, 20);
	EXPECT_EQ(arcs.verdict, Verdict::pass) << arcs.failure;
	EXPECT_TRUE(arcs.witness_reproduced);
	EXPECT_GT(arcs.multi_piece_intersections, 0u);
	GeometryReport rects = verify_rect_qsr(200, 1, 20);
	EXPECT_EQ(rects.verdict, Verdict::pass) << rects.failure;
	EXPECT_TRUE(rects.witness_reproduced);
}
