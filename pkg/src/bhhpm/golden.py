"""Reference convergence tables and prose error claims for the benchmarks.

Cell values are plain relative errors |S_m - u_exact| / |u_exact| exactly as
printed in the reference tables, keyed by (t, m, x) with exact rational grid
coordinates.  The m keys are the numbers of series terms that actually
generate each row's values: the case-1 source labels its two middle rows as
the 2- and 3-term sums, but their values are the 3- and 5-term sums (every
cell matches those to ~1e-4 or better and is off by factors of 60..10000
otherwise), so they are keyed 3 and 5 here.  The display layouts below keep
each table's printed row labels.

Cells below roughly 1e-7 inherit an absolute noise floor of about 1e-10 from
the software that produced the reference values; the comparison rules in
``tables.golden_compare`` are stated over the printed values regardless.
"""

from __future__ import annotations

from fractions import Fraction

#: Evaluation grid shared by all three reference tables.
GRID_T: tuple[Fraction, ...] = (Fraction(1, 10), Fraction(3, 10), Fraction(2, 5))
GRID_X: tuple[Fraction, ...] = (Fraction(1), Fraction(2), Fraction(3))

#: Row sets as printed (used for report layout).
DISPLAY_ORDERS: dict[int, tuple[int, ...]] = {
    1: (1, 2, 3, 6),
    2: (1, 3, 5, 6),
    3: (1, 3, 5, 6),
}

#: Row sets keyed by the partial-sum size that generates the printed values.
REFERENCE_ORDERS: dict[int, tuple[int, ...]] = {
    1: (1, 3, 5, 6),
    2: (1, 3, 5, 6),
    3: (1, 3, 5, 6),
}

#: Upper bounds on the maximum 6-term relative error over the grid, in
#: percent units (100 * cell value).
MAX_S6_PERCENT_CLAIM: dict[int, str] = {
    1: "0.0000058",
    2: "0.00014",
    3: "0.038",
}


def _table(rows: dict[int, tuple[str, str, str]], orders: tuple[int, ...]) -> dict[tuple[Fraction, int, Fraction], str]:
    cells: dict[tuple[Fraction, int, Fraction], str] = {}
    keys = [(t, m) for t in GRID_T for m in orders]
    flat = [rows[i] for i in range(len(keys))]
    for (t, m), values in zip(keys, flat):
        for x, value in zip(GRID_X, values):
            cells[(t, m, x)] = value
    return cells


REFERENCE_TABLES: dict[int, dict[tuple[Fraction, int, Fraction], str]] = {
    1: _table(
        {
            0: ("0.01693168743", "0.01002710463", "0.005488150424"),
            1: ("0.000002337346256", "2.025644856e-7", "9.527700575e-7"),
            2: ("2.153484215e-10", "3.464089104e-10", "3.155246333e-10"),
            3: ("9.744801271e-12", "3.920421861e-11", "9.937961084e-11"),
            4: ("0.05344388963", "0.03164997413", "0.01732302882"),
            5: ("0.00006806597676", "0.000003967422423", "0.00002580410708"),
            6: ("6.184344787e-8", "9.467317545e-8", "5.516785201e-8"),
            7: ("1.008793018e-8", "1.166422821e-9", "2.026398250e-9"),
            8: ("0.07311570399", "0.04329980772", "0.02369935005"),
            9: ("0.0001675410515", "0.000007498069748", "0.00006123279256"),
            10: ("2.799248652e-7", "4.009848425e-7", "2.364525175e-7"),
            11: ("5.775483086e-8", "6.758498122e-9", "1.111128458e-8"),
        },
        REFERENCE_ORDERS[1],
    ),
    2: _table(
        {
            0: ("0.0484797171", "0.056937877", "0.063676094"),
            1: ("0.0000184239461", "0.000009125432", "0.000006989146"),
            2: ("7.8094040e-9", "3.9049212e-9", "1.37134980e-8"),
            3: ("3.61301281e-10", "6.1915442e-11", "1.3095951e-10"),
            4: ("0.1570606291", "0.184462686", "0.206292613"),
            5: ("0.000524561340", "0.00023856284", "0.00024584133"),
            6: ("0.0000017771365", "0.00000129074423", "0.00000380612758"),
            7: ("2.19608021e-7", "2.10498615e-7", "9.144252e-9"),
            8: ("0.2177728801", "0.255767283", "0.2860356311"),
            9: ("0.001277016710", "0.00055367038", "0.00065831599"),
            10: ("0.0000075558572", "0.0000060480463", "0.0000170599007"),
            11: ("0.000001302473287", "0.000001221861195", "8.044206e-8"),
        },
        REFERENCE_ORDERS[2],
    ),
    3: _table(
        {
            0: ("0.1473751972", "0.1768549738", "0.1894968996"),
            1: ("0.00008115001396", "0.0004703355304", "0.0008489173163"),
            2: ("5.853207295e-7", "0.000001136972415", "2.175815927e-7"),
            3: ("4.468762836e-8", "5.878826669e-8", "2.556253934e-8"),
            4: ("0.5347070619", "0.6416656548", "0.6875331484"),
            5: ("0.001445157793", "0.01763206139", "0.03053744832"),
            6: ("0.0002129909216", "0.0003484139717", "0.00009299132649"),
            7: ("0.00003726778757", "0.00005691935052", "0.00002679413014"),
            8: ("0.7871664200", "0.9446250035", "1.012148624"),
            9: ("0.002172311991", "0.04914756514", "0.08362907281"),
            10: ("0.001086228788", "0.001651183957", "0.0005006633300"),
            11: ("0.0002239213593", "0.0003721014272", "0.0001680489489"),
        },
        REFERENCE_ORDERS[3],
    ),
}
