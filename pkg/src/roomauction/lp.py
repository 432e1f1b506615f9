"""Textual LP-format export of the winner-determination integer program.

Unlike the internal solver (which searches only accept/arrival decisions),
the export stays faithful to the printed mixed-integer model: binary
acceptance y_<c>, binary per-day occupancy x_<c>_<d>, integer arrival l_<c>,
and integer per-day room-type allocation n_<r>_<d> coupled to real-group
capacity. Any LP-format MILP solver can consume the output.
"""

from __future__ import annotations

import re

from .forward import ForwardModel


def _sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_]", "_", name)


class _Rows:
    def __init__(self):
        self.lines: list[str] = []

    def add(self, name: str, terms: list[tuple[int, str]], op: str, rhs: int) -> None:
        body = _format_terms(terms)
        self.lines.append(f" {name}: {body} {op} {rhs}")


def _format_terms(terms: list[tuple[int, str]]) -> str:
    parts: list[str] = []
    for coeff, var in terms:
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        coeff_str = f"{mag} " if mag != 1 else ""
        if not parts:
            lead = "- " if sign == "-" else ""
            parts.append(f"{lead}{coeff_str}{var}")
        else:
            parts.append(f"{sign} {coeff_str}{var}")
    return " ".join(parts) if parts else "0"


def export_lp(model: ForwardModel) -> str:
    """Render the model as an LP-format document (maximization)."""
    days = model.days
    horizon_len = days
    rows = _Rows()
    type_names = [f"n_{_sanitize(t)}" for t in model.type_ids]
    if len(set(type_names)) != len(type_names):
        type_names = [f"n_{_sanitize(t)}_{i}" for i, t in enumerate(model.type_ids)]
    group_members: dict[int, list[int]] = {gi: [] for gi in range(len(model.group_ids))}
    for ti, rt_id in enumerate(model.type_ids):
        gi = model.group_ids.index(model.auction.group_of(rt_id))
        group_members[gi].append(ti)

    objective_terms = [
        (cb.coefficient, f"y_{cb.customer_id}") for cb in model.compiled
    ]

    # (2) daily allocation per room type, coupled to the n_{r,d} variables
    for ti in range(len(model.type_ids)):
        for d in range(1, days + 1):
            terms: list[tuple[int, str]] = []
            for cb in model.compiled:
                bid = cb.bid
                if not bid.window_lo <= d <= bid.window_hi:
                    continue
                for t, n in cb.type_demand:
                    if t == ti:
                        terms.append((n, f"x_{bid.customer_id}_{d}"))
            terms.append((-1, f"{type_names[ti]}_{d}"))
            rows.add(f"cap_{_sanitize(model.type_ids[ti])}_{d}", terms, "<=", 0)

    # (9) real-group capacity over member room types
    for gi, g_id in enumerate(model.group_ids):
        for d in range(1, days + 1):
            terms = [(1, f"{type_names[ti]}_{d}") for ti in group_members[gi]]
            rows.add(f"grp_{_sanitize(g_id)}_{d}", terms, "<=", model.group_caps[gi])

    binaries: list[str] = []
    generals: list[str] = []
    bounds: list[str] = []
    for ti in range(len(model.type_ids)):
        cap = model.type_caps[ti]
        if cap is None:
            gi = model.group_ids.index(
                model.auction.group_of(model.type_ids[ti])
            )
            cap = model.group_caps[gi]
        for d in range(1, days + 1):
            var = f"{type_names[ti]}_{d}"
            generals.append(var)
            bounds.append(f" 0 <= {var} <= {cap}")

    for cb in model.compiled:
        bid = cb.bid
        cid = bid.customer_id
        window = range(bid.window_lo, bid.window_hi + 1)
        # (3) exactly M_c stay days when accepted
        rows.add(
            f"stay_{cid}",
            [(1, f"x_{cid}_{d}") for d in window] + [(-cb.nights, f"y_{cid}")],
            "=",
            0,
        )
        for d in window:
            # (4) occupancy only at or after the arrival day
            rows.add(
                f"arr_lo_{cid}_{d}",
                [(1, f"l_{cid}"), (horizon_len, f"x_{cid}_{d}")],
                "<=",
                horizon_len + d,
            )
            # (5) occupancy only before arrival + stay length
            rows.add(
                f"arr_hi_{cid}_{d}",
                [(d, f"x_{cid}_{d}"), (-1, f"l_{cid}")],
                "<=",
                cb.nights - 1,
            )
        # (6) arrival window
        bounds.append(f" {bid.window_lo} <= l_{cid} <= {bid.latest_arrival}")
        generals.append(f"l_{cid}")
        binaries.append(f"y_{cid}")
        for d in window:
            binaries.append(f"x_{cid}_{d}")
        for d in sorted(bid.blackout_days):
            bounds.append(f" x_{cid}_{d} = 0")

    out = ["Maximize", f" obj: {_format_terms(objective_terms)}", "Subject To"]
    out.extend(rows.lines)
    if bounds:
        out.append("Bounds")
        out.extend(bounds)
    if generals:
        out.append("Generals")
        out.extend(f" {v}" for v in generals)
    if binaries:
        out.append("Binaries")
        out.extend(f" {v}" for v in binaries)
    out.append("End")
    return "\n".join(out) + "\n"
