"""Inner-loop solvers for per-timestep link assignment.

These functions are written in a numba-compilable subset of Python and are
the hot path of every experiment sweep (tens of thousands of calls). The
backend module compiles them with @njit when numba is enabled and runs this
exact source uncompiled otherwise, so both backends perform bit-identical
IEEE double arithmetic in the same order.

Graphs arrive in CSR form keyed by HAP: hap_ptr has num_haps+1 entries and
edge e of HAP h (hap_ptr[h] <= e < hap_ptr[h+1]) points at satellite
adj_sat[e] with weight adj_w[e] > 0, sorted by satellite index within each
HAP. Every solver returns, per HAP, the index of the chosen edge into the
adjacency arrays, or -1 when the HAP stays unassigned.
"""

import numpy as np

INF = np.inf


def solve_optimal(num_haps, num_sats, hap_ptr, adj_sat, adj_w, beam_cap):
    """Exact max-weight one-to-many matching via successive shortest paths.

    Flow formulation: source -> HAP (capacity 1), HAP -> satellite edges
    (capacity 1, cost max_w - weight >= 0), satellite -> sink (capacity
    beam_cap). Each round runs Dijkstra with node potentials over the
    residual graph and augments one unit along the min-cost path, which adds
    exactly one newly assigned HAP (possibly rerouting earlier ones). Path
    costs are non-decreasing over rounds, so the loop stops at the first
    path whose true gain (max_w - true cost) is not positive; the flow at
    that point is a maximum-total-weight assignment for the best choice of
    assignment size.

    Deterministic: nodes are scanned in index order (HAPs 0..H-1, then
    satellites), and relaxations keep the first parent on exact ties, so
    equal-cost alternatives resolve toward lower node indices.
    """
    assign = np.full(num_haps, -1, dtype=np.int64)
    num_edges = adj_w.shape[0]
    if num_edges == 0:
        return assign

    max_w = adj_w[0]
    for e in range(num_edges):
        if adj_w[e] > max_w:
            max_w = adj_w[e]

    n = num_haps + num_sats
    load = np.zeros(num_sats, dtype=np.int64)
    pot = np.zeros(n, dtype=np.float64)
    pot_sink = 0.0
    dist = np.empty(n, dtype=np.float64)
    done = np.empty(n, dtype=np.bool_)
    par_sat = np.empty(num_sats, dtype=np.int64)    # hap that relaxed the sat
    par_eidx = np.empty(num_sats, dtype=np.int64)   # edge used for that relax

    for _round in range(num_haps):
        for v in range(n):
            dist[v] = INF
            done[v] = False
        for h in range(num_haps):
            if assign[h] == -1:
                dist[h] = 0.0
        dist_sink = INF
        sink_sat = -1

        while True:
            u = -1
            best = INF
            for v in range(n):
                if not done[v] and dist[v] < best:
                    best = dist[v]
                    u = v
            if u == -1 or best >= dist_sink:
                break
            done[u] = True
            if u < num_haps:
                h = u
                for e in range(hap_ptr[h], hap_ptr[h + 1]):
                    if e == assign[h]:
                        continue  # matched edge: only its backward residual exists
                    s = adj_sat[e]
                    v = num_haps + s
                    nd = dist[h] + (max_w - adj_w[e]) + pot[h] - pot[v]
                    if nd < dist[v]:
                        dist[v] = nd
                        par_sat[s] = h
                        par_eidx[s] = e
            else:
                s = u - num_haps
                if load[s] < beam_cap:
                    nd = dist[u] + pot[u] - pot_sink
                    if nd < dist_sink:
                        dist_sink = nd
                        sink_sat = s
                for h in range(num_haps):
                    e = assign[h]
                    if e != -1 and adj_sat[e] == s:
                        nd = dist[u] - (max_w - adj_w[e]) + pot[u] - pot[h]
                        if nd < dist[h]:
                            dist[h] = nd

        if sink_sat == -1:
            break
        true_cost = dist_sink + pot_sink  # source potential is always 0
        if true_cost >= max_w:
            break  # best remaining augmentation would not increase the total

        for v in range(n):
            if dist[v] < dist_sink:
                pot[v] += dist[v]
            else:
                pot[v] += dist_sink
        pot_sink += dist_sink

        s = sink_sat
        load[s] += 1
        while True:
            h = par_sat[s]
            prev_e = assign[h]
            assign[h] = par_eidx[s]
            if prev_e == -1:
                break
            s = adj_sat[prev_e]

    return assign


def solve_greedy(num_haps, num_sats, hap_ptr, adj_sat, adj_w, beam_cap):
    """Myopic baseline: HAPs in ascending id each take their best free beam.

    Ties on weight go to the lowest satellite index (adjacency is sorted by
    satellite, and strict > keeps the first best seen).
    """
    assign = np.full(num_haps, -1, dtype=np.int64)
    load = np.zeros(num_sats, dtype=np.int64)
    for h in range(num_haps):
        best_e = -1
        best_w = 0.0
        for e in range(hap_ptr[h], hap_ptr[h + 1]):
            if load[adj_sat[e]] < beam_cap and adj_w[e] > best_w:
                best_w = adj_w[e]
                best_e = e
        if best_e != -1:
            assign[h] = best_e
            load[adj_sat[best_e]] += 1
    return assign


def solve_random(num_haps, num_sats, hap_ptr, adj_sat, adj_w, beam_cap, unit):
    """Random baseline: HAPs in ascending id pick uniformly among free beams.

    unit[h] in [0, 1) supplies the draw for HAP h; the caller owns the RNG so
    results are reproducible and independent of the backend.
    """
    assign = np.full(num_haps, -1, dtype=np.int64)
    load = np.zeros(num_sats, dtype=np.int64)
    cand = np.empty(num_sats, dtype=np.int64)
    for h in range(num_haps):
        k = 0
        for e in range(hap_ptr[h], hap_ptr[h + 1]):
            if load[adj_sat[e]] < beam_cap:
                cand[k] = e
                k += 1
        if k > 0:
            e = cand[int(unit[h] * k)]
            assign[h] = e
            load[adj_sat[e]] += 1
    return assign
