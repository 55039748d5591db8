"""End-to-end smoke checks for the diopop python module."""

import sys

import diopop

BISTABLE = (1, 1, 4, 1, 1, 4)

failures = []


def check(name, cond):
    if not cond:
        failures.append(name)
        print(f"smoke: {name} FAILED")


w = diopop.apply_W(BISTABLE, (0.5, 0.5))
check("apply_W value", abs(w[0] - 3 / 7) < 1e-15 and abs(w[1] - 3 / 7) < 1e-15)

check("apply_W_exact value",
      diopop.apply_W_exact(("1", "1", "4", "1", "1", "4"), ("1/2", "1/2")) == ("3/7", "3/7"))

reduced = diopop.to_reduced(BISTABLE)
check("to_reduced", reduced == [0.25, 0.25, 0.25, 0.25])

q = diopop.square_to_quadrant((0.5, 0.5))
check("odds transform roundtrip", diopop.quadrant_to_square(q) == (0.5, 0.5))

fps = diopop.fixed_points(BISTABLE)
check("fixed_points row count", len(fps) == 7)
by_label = {fp["label"]: fp for fp in fps if fp["system"] == "square"}
z2 = by_label["z2"]
check("z2 coordinates", abs(z2["x"] - 2 / 3) < 1e-12 and abs(z2["y"] - 2 / 3) < 1e-12)
check("z2 stability", z2["stability"] == "saddle")
check("z2 eigen", abs(z2["eigen"][0].real - 1.5) < 1e-12)
check("z1 not applicable", not by_label["z1"]["applicable"])

orbit = diopop.iterate(BISTABLE, (0.1, 0.1))
check("iterate verdict", orbit["verdict"] == "ConvergedTo" and orbit["limit"] == (0.0, 0.0))
check("iterate states recorded", len(orbit["states"]) == orbit["steps_used"] + 1)

pred = diopop.predict_symmetric_limit(BISTABLE, (0.8, 0.5))
check("predictor regime", pred["regime"] == "bistable" and abs(pred["x_star"] - 2 / 3) < 1e-15)
check("predictor limit", pred["limit"] == (1.0, 1.0) and not pred["low_confidence"])

lemma = diopop.check_lemma_q2(("1", "1", "4", "1", "1", "4"), ("1/2", "1/2"), 8)
check("interior certification", lemma["holds"] and lemma["gaps"][0] == ("4/7", "4/7"))

basins = diopop.scan_basins(BISTABLE, 5)
check("basin corner labels",
      basins["labels"][4][0] == "ToZ0" and basins["labels"][0][0] == "ToZ3")
check("basin raster bytes", len(basins["gray"]) == 25 and basins["gray"][20] == 0)

sep = diopop.stable_boundary(BISTABLE, "z2", rays=8, max_iter=4000)
check("stable boundary kind", sep["kind"] == "stable-boundary" and sep["rays"] == 8)
check("stable boundary bookkeeping", len(sep["points"]) + len(sep["skipped_rays"]) == 8)

curve = diopop.unstable_curve(BISTABLE, "z2", steps=40, offset=1e-3)
check("unstable curve diagonal", all(abs(x - y) < 1e-12 for x, y in curve["points"]))
check("unstable curve divergence", curve["pos_diverged"])

try:
    diopop.to_reduced((1, 1, 0, 1, 1, 4))
    check("zero denominator raises", False)
except ZeroDivisionError:
    pass

try:
    diopop.apply_W((-1, 1, 1, 1, 1, 1), (0.5, 0.5))
    check("negative params raise", False)
except ValueError:
    pass

if failures:
    print(f"smoke: {len(failures)} check(s) failed")
    sys.exit(1)
print("smoke: all checks passed")
