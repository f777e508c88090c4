"""Deterministic 2-D structure depiction as SVG.

Ring systems are laid out as regular polygons grown ring by ring across
shared edges; acyclic atoms follow 120-degree zig-zag chains with
largest-gap bisection at branch points; a short repulsion pass separates
accidental overlaps. The same molecule always renders to identical
bytes.
"""

from __future__ import annotations

import math

from pagforge.chem import Molecule
from pagforge.chem.mol import BondOrder
from pagforge.chem.rings import find_sssr

BOND_LEN = 1.0


def _polygon_radius(n: int) -> float:
    return BOND_LEN / (2.0 * math.sin(math.pi / n))


def _ring_systems(rings: list[tuple[int, ...]]) -> list[list[int]]:
    """Group ring indices into fused systems (sharing >= 2 atoms)."""
    parent = list(range(len(rings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(rings)):
        for j in range(i + 1, len(rings)):
            if len(set(rings[i]) & set(rings[j])) >= 2:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(rings)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _place_ring_from_edge(ring: tuple[int, ...], pos, a: int, b: int,
                          away_from) -> None:
    """Place a regular polygon on the already-placed edge (a, b), its
    body on the side opposite ``away_from``."""
    n = len(ring)
    order = list(ring)
    ia = order.index(a)
    rotated = order[ia:] + order[:ia]
    if rotated[1] != b:
        rotated = [rotated[0]] + rotated[1:][::-1]
    pa, pb = pos[a], pos[b]
    mid = ((pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0)
    ex, ey = pb[0] - pa[0], pb[1] - pa[1]
    elen = math.hypot(ex, ey) or 1.0
    # Unit normal to the edge.
    nx, ny = -ey / elen, ex / elen
    apothem = BOND_LEN / (2.0 * math.tan(math.pi / n)) * (elen / BOND_LEN)
    c1 = (mid[0] + nx * apothem, mid[1] + ny * apothem)
    c2 = (mid[0] - nx * apothem, mid[1] - ny * apothem)
    d1 = math.hypot(c1[0] - away_from[0], c1[1] - away_from[1])
    d2 = math.hypot(c2[0] - away_from[0], c2[1] - away_from[1])
    center = c1 if d1 >= d2 else c2
    radius = math.hypot(pa[0] - center[0], pa[1] - center[1])
    start = math.atan2(pa[1] - center[1], pa[0] - center[0])
    toward_b = math.atan2(pb[1] - center[1], pb[0] - center[0])
    delta = (toward_b - start) % (2 * math.pi)
    step = 2 * math.pi / n if abs(delta - 2 * math.pi / n) < 1e-6 else -2 * math.pi / n
    for k, atom in enumerate(rotated):
        if atom in pos:
            continue
        ang = start + step * k
        pos[atom] = (center[0] + radius * math.cos(ang),
                     center[1] + radius * math.sin(ang))


def _layout_component(mol: Molecule, atoms: list[int],
                      rings: list[tuple[int, ...]]) -> dict[int, tuple[float, float]]:
    pos: dict[int, tuple[float, float]] = {}
    atom_set = set(atoms)
    comp_rings = [r for r in rings if set(r) <= atom_set]

    for system in _ring_systems(comp_rings):
        ordered = sorted(system, key=lambda ri: (len(comp_rings[ri]),
                                                 tuple(sorted(comp_rings[ri]))))
        pending = list(ordered)
        first = comp_rings[pending.pop(0)]
        radius = _polygon_radius(len(first))
        anchor_x = 0.0
        if pos:
            anchor_x = max(p[0] for p in pos.values()) + 3.0
        for k, atom in enumerate(first):
            ang = math.pi / 2 + 2 * math.pi * k / len(first)
            pos[atom] = (anchor_x + radius * math.cos(ang),
                         radius * math.sin(ang))
        guard = 0
        while pending and guard < 3 * len(pending) + 3:
            guard += 1
            progressed = False
            for ri in list(pending):
                ring = comp_rings[ri]
                placed_adjacent = None
                for i, a in enumerate(ring):
                    b = ring[(i + 1) % len(ring)]
                    if a in pos and b in pos:
                        placed_adjacent = (a, b)
                        break
                if placed_adjacent is None:
                    continue
                placed_pts = [pos[x] for x in ring if x in pos]
                others = [pos[x] for x in atom_set
                          if x in pos and pos[x] not in placed_pts]
                centroid = _centroid(others) if others else _centroid(placed_pts)
                _place_ring_from_edge(ring, pos, *placed_adjacent, centroid)
                pending.remove(ri)
                progressed = True
            if not progressed:
                break

    # Chain growth from placed scaffold (or from scratch for acyclic).
    remaining = [i for i in atoms if i not in pos]
    if not pos and remaining:
        root = remaining[0]
        pos[root] = (0.0, 0.0)

    changed = True
    while changed:
        changed = False
        for i in sorted(atoms):
            if i not in pos:
                continue
            unplaced = [n for n in sorted(mol.neighbors(i)) if n not in pos]
            if not unplaced:
                continue
            dirs = [
                math.atan2(pos[n][1] - pos[i][1], pos[n][0] - pos[i][0])
                for n in sorted(mol.neighbors(i)) if n in pos
            ]
            for v in unplaced:
                ang = _next_direction(dirs, parity=len(dirs) + v)
                pos[v] = (pos[i][0] + BOND_LEN * math.cos(ang),
                          pos[i][1] + BOND_LEN * math.sin(ang))
                dirs.append(ang)
                changed = True

    # Separate residual overlaps (deterministic sweep).
    atom_list = sorted(pos)
    for _ in range(30):
        moved = False
        for ii, i in enumerate(atom_list):
            for j in atom_list[ii + 1:]:
                dx = pos[j][0] - pos[i][0]
                dy = pos[j][1] - pos[i][1]
                d = math.hypot(dx, dy)
                if d < 0.5:
                    if d < 1e-9:
                        dx, dy, d = 0.1, 0.07, 0.122
                    push = (0.5 - d) / 2.0
                    ux, uy = dx / d, dy / d
                    if not _bonded(mol, i, j):
                        pos[i] = (pos[i][0] - ux * push, pos[i][1] - uy * push)
                        pos[j] = (pos[j][0] + ux * push, pos[j][1] + uy * push)
                        moved = True
        if not moved:
            break
    return pos


def _bonded(mol: Molecule, a: int, b: int) -> bool:
    return mol.bond_between(a, b) is not None


def _centroid(points) -> tuple[float, float]:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    return (sum(xs) / len(xs), sum(ys) / len(ys))


def _next_direction(existing: list[float], parity: int) -> float:
    if not existing:
        return 0.0
    if len(existing) == 1:
        turn = 2 * math.pi / 3 if parity % 2 == 0 else -2 * math.pi / 3
        return existing[0] + math.pi + turn
    # Bisect the widest angular gap.
    angles = sorted(a % (2 * math.pi) for a in existing)
    best_gap, best_mid = -1.0, 0.0
    for k, a in enumerate(angles):
        nxt = angles[(k + 1) % len(angles)] + (2 * math.pi if k == len(angles) - 1 else 0)
        gap = nxt - a
        if gap > best_gap:
            best_gap, best_mid = gap, a + gap / 2.0
    return best_mid


def compute_coordinates(mol: Molecule) -> dict[int, tuple[float, float]]:
    """Deterministic 2-D coordinates, one entry per atom."""
    rings = find_sssr(mol)
    pos: dict[int, tuple[float, float]] = {}
    x_offset = 0.0
    for comp in mol.components():
        comp_pos = _layout_component(mol, comp, rings)
        if comp_pos:
            min_x = min(p[0] for p in comp_pos.values())
            max_x = max(p[0] for p in comp_pos.values())
            for i, (x, y) in comp_pos.items():
                pos[i] = (x - min_x + x_offset, y)
            x_offset += (max_x - min_x) + 2.0
    return pos


def _atom_label(mol: Molecule, idx: int) -> str | None:
    atom = mol.atoms[idx]
    if atom.element == "C" and atom.formal_charge == 0:
        return None
    label = atom.element
    h = atom.total_h
    if h == 1:
        label += "H"
    elif h > 1:
        label += f"H{h}"
    charge = atom.formal_charge
    if charge == 1:
        label += "+"
    elif charge == -1:
        label += "-"
    elif charge:
        label += f"{charge:+d}"
    return label


def depict_svg(mol: Molecule, scale: float = 40.0) -> str:
    """Render to a standalone SVG document (identical bytes per input)."""
    pos = compute_coordinates(mol)
    if not pos:
        return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>'
    pad = 1.0
    min_x = min(p[0] for p in pos.values()) - pad
    max_x = max(p[0] for p in pos.values()) + pad
    min_y = min(p[1] for p in pos.values()) - pad
    max_y = max(p[1] for p in pos.values()) + pad

    def sx(x: float) -> float:
        return (x - min_x) * scale

    def sy(y: float) -> float:
        return (max_y - y) * scale

    width = (max_x - min_x) * scale
    height = (max_y - min_y) * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.2f} {height:.2f}">',
        '<g stroke="#222" stroke-width="1.5" fill="none">',
    ]
    for bond in mol.bonds:
        x1, y1 = sx(pos[bond.a][0]), sy(pos[bond.a][1])
        x2, y2 = sx(pos[bond.b][0]), sy(pos[bond.b][1])
        if bond.order in (BondOrder.DOUBLE, BondOrder.TRIPLE):
            n_lines = 2 if bond.order is BondOrder.DOUBLE else 3
            dx, dy = x2 - x1, y2 - y1
            norm = math.hypot(dx, dy) or 1.0
            ox, oy = -dy / norm * 3.0, dx / norm * 3.0
            offsets = [-(n_lines - 1) / 2.0 + k for k in range(n_lines)]
            for o in offsets:
                parts.append(
                    f'<line x1="{x1 + ox * o:.2f}" y1="{y1 + oy * o:.2f}" '
                    f'x2="{x2 + ox * o:.2f}" y2="{y2 + oy * o:.2f}"/>'
                )
        else:
            parts.append(
                f'<line x1="{x1:.2f}" y1="{y1:.2f}" '
                f'x2="{x2:.2f}" y2="{y2:.2f}"/>'
            )
    # Inner circles mark aromatic rings.
    for ring in find_sssr(mol):
        if all(mol.atoms[i].aromatic for i in ring):
            cx, cy = _centroid([pos[i] for i in ring])
            parts.append(
                f'<circle cx="{sx(cx):.2f}" cy="{sy(cy):.2f}" '
                f'r="{scale * 0.32:.2f}" stroke-dasharray="3,3"/>'
            )
    parts.append("</g>")
    parts.append('<g font-family="Helvetica" font-size="13" fill="#111" '
                 'text-anchor="middle">')
    for i in sorted(pos):
        label = _atom_label(mol, i)
        if label is None:
            continue
        x, y = sx(pos[i][0]), sy(pos[i][1])
        parts.append(
            f'<rect x="{x - 4.5 * len(label):.2f}" y="{y - 9:.2f}" '
            f'width="{9 * len(label):.2f}" height="18" fill="#fff" stroke="none"/>'
        )
        parts.append(f'<text x="{x:.2f}" y="{y + 4.5:.2f}">{label}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
