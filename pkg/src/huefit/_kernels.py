"""Compiled numerical kernels: color conversion, CIEDE2000, filtering, annealing steps.

Everything here operates on plain ndarrays and scalars so it can be jitted.
The public modules wrap these in typed dataclass APIs.
"""

import math

import numpy as np
from numba import njit

# CIE constants, D65 white, 2 degree observer
_WHITE_X = 0.95047
_WHITE_Y = 1.0
_WHITE_Z = 1.08883
_EPS = 216.0 / 24389.0
_KAPPA = 24389.0 / 27.0
_POW25_7 = 6103515625.0  # 25**7

GAMUT_EPS = 1e-6


@njit(cache=True)
def _srgb_decode(c):
    if c <= 0.04045:
        return c / 12.92
    return ((c + 0.055) / 1.055) ** 2.4


@njit(cache=True)
def _srgb_encode(c):
    if c <= 0.0031308:
        return 12.92 * c
    return 1.055 * c ** (1.0 / 2.4) - 0.055


@njit(cache=True)
def srgb01_to_lab_nb(r, g, b):
    rl = _srgb_decode(r)
    gl = _srgb_decode(g)
    bl = _srgb_decode(b)
    x = (0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl) / _WHITE_X
    y = (0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl) / _WHITE_Y
    z = (0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl) / _WHITE_Z
    fx = x ** (1.0 / 3.0) if x > _EPS else (_KAPPA * x + 16.0) / 116.0
    fy = y ** (1.0 / 3.0) if y > _EPS else (_KAPPA * y + 16.0) / 116.0
    fz = z ** (1.0 / 3.0) if z > _EPS else (_KAPPA * z + 16.0) / 116.0
    L = 116.0 * fy - 16.0
    a = 500.0 * (fx - fy)
    bb = 200.0 * (fy - fz)
    return L, a, bb


@njit(cache=True)
def lab_to_srgb01_nb(L, a, b):
    """Unclamped sRGB in [0,1]; callers decide how to treat out-of-range values."""
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    x = fx ** 3 if fx ** 3 > _EPS else (116.0 * fx - 16.0) / _KAPPA
    y = ((L + 16.0) / 116.0) ** 3 if L > _KAPPA * _EPS else L / _KAPPA
    z = fz ** 3 if fz ** 3 > _EPS else (116.0 * fz - 16.0) / _KAPPA
    x *= _WHITE_X
    y *= _WHITE_Y
    z *= _WHITE_Z
    rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z
    gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z
    bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z
    return _srgb_encode(rl), _srgb_encode(gl), _srgb_encode(bl)


@njit(cache=True)
def in_srgb_gamut_nb(L, a, b):
    fy = (L + 16.0) / 116.0
    fx = fy + a / 500.0
    fz = fy - b / 200.0
    x = fx ** 3 if fx ** 3 > _EPS else (116.0 * fx - 16.0) / _KAPPA
    y = ((L + 16.0) / 116.0) ** 3 if L > _KAPPA * _EPS else L / _KAPPA
    z = fz ** 3 if fz ** 3 > _EPS else (116.0 * fz - 16.0) / _KAPPA
    x *= _WHITE_X
    y *= _WHITE_Y
    z *= _WHITE_Z
    rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z
    gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z
    bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z
    lo = -GAMUT_EPS
    hi = 1.0 + GAMUT_EPS
    return lo <= rl <= hi and lo <= gl <= hi and lo <= bl <= hi


@njit(cache=True)
def ciede2000_nb(L1, a1, b1, L2, a2, b2):
    C1 = math.hypot(a1, b1)
    C2 = math.hypot(a2, b2)
    Cbar = 0.5 * (C1 + C2)
    c7 = Cbar ** 7
    G = 0.5 * (1.0 - math.sqrt(c7 / (c7 + _POW25_7)))
    a1p = (1.0 + G) * a1
    a2p = (1.0 + G) * a2
    C1p = math.hypot(a1p, b1)
    C2p = math.hypot(a2p, b2)

    if b1 == 0.0 and a1p == 0.0:
        h1p = 0.0
    else:
        h1p = math.degrees(math.atan2(b1, a1p))
        if h1p < 0.0:
            h1p += 360.0
    if b2 == 0.0 and a2p == 0.0:
        h2p = 0.0
    else:
        h2p = math.degrees(math.atan2(b2, a2p))
        if h2p < 0.0:
            h2p += 360.0

    dLp = L2 - L1
    dCp = C2p - C1p
    if C1p * C2p == 0.0:
        dhp = 0.0
    else:
        dhp = h2p - h1p
        if dhp > 180.0:
            dhp -= 360.0
        elif dhp < -180.0:
            dhp += 360.0
    dHp = 2.0 * math.sqrt(C1p * C2p) * math.sin(math.radians(dhp) * 0.5)

    Lbp = 0.5 * (L1 + L2)
    Cbp = 0.5 * (C1p + C2p)
    if C1p * C2p == 0.0:
        hbp = h1p + h2p
    else:
        hbp = 0.5 * (h1p + h2p)
        if abs(h1p - h2p) > 180.0:
            if h1p + h2p < 360.0:
                hbp += 180.0
            else:
                hbp -= 180.0

    T = (1.0
         - 0.17 * math.cos(math.radians(hbp - 30.0))
         + 0.24 * math.cos(math.radians(2.0 * hbp))
         + 0.32 * math.cos(math.radians(3.0 * hbp + 6.0))
         - 0.20 * math.cos(math.radians(4.0 * hbp - 63.0)))
    dtheta = 30.0 * math.exp(-(((hbp - 275.0) / 25.0) ** 2))
    c7 = Cbp ** 7
    RC = 2.0 * math.sqrt(c7 / (c7 + _POW25_7))
    SL = 1.0 + 0.015 * (Lbp - 50.0) ** 2 / math.sqrt(20.0 + (Lbp - 50.0) ** 2)
    SC = 1.0 + 0.045 * Cbp
    SH = 1.0 + 0.015 * Cbp * T
    RT = -math.sin(math.radians(2.0 * dtheta)) * RC

    tL = dLp / SL
    tC = dCp / SC
    tH = dHp / SH
    return math.sqrt(tL * tL + tC * tC + tH * tH + RT * tC * tH)


@njit(cache=True)
def ciede2000_matrix_nb(labs):
    n = labs.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d = ciede2000_nb(labs[i, 0], labs[i, 1], labs[i, 2],
                             labs[j, 0], labs[j, 1], labs[j, 2])
            out[i, j] = d
            out[j, i] = d
    return out


# ---------------------------------------------------------------------------
# pseudo-random stream (xorshift128+, splitmix64 seeding)
#
# Runs own their state arrays, so concurrent runs in one process stay
# independent and bit-reproducible.
# ---------------------------------------------------------------------------

@njit(cache=True)
def rng_seed(state, seed):
    z = np.uint64(seed)
    for i in range(2):
        z = z + np.uint64(0x9E3779B97F4A7C15)
        t = z
        t = (t ^ (t >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        t = (t ^ (t >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        state[i] = t ^ (t >> np.uint64(31))
    if state[0] == np.uint64(0) and state[1] == np.uint64(0):
        state[0] = np.uint64(0x2545F4914F6CDD1D)


@njit(cache=True)
def _rng_next(state):
    s1 = state[0]
    s0 = state[1]
    state[0] = s0
    s1 = s1 ^ (s1 << np.uint64(23))
    s1 = s1 ^ (s1 >> np.uint64(17))
    s1 = s1 ^ s0
    s1 = s1 ^ (s0 >> np.uint64(26))
    state[1] = s1
    return s0 + s1


@njit(cache=True)
def rng_uniform(state):
    return float(_rng_next(state) >> np.uint64(11)) * (1.0 / 9007199254740992.0)


# ---------------------------------------------------------------------------
# hue-term classification and filtering
#
# Term table layout, one row per term, in check order:
#   0 has_hue, 1 hue_lo, 2 hue_hi            (half-open [lo,hi), wraps at 360)
#   3 has_l,   4 l_lo, 5 l_lo_open, 6 l_hi, 7 l_hi_closed
#   8 has_c,   9 c_lo, 10 c_hi, 11 c_hi_closed
#
# Filter parameter vector:
#   0 l_lo, 1 l_hi, 2 band_flag, 3 band_h_lo, 4 band_h_hi,
#   5 band_l_lo, 6 band_l_hi, 7 use_terms
# ---------------------------------------------------------------------------

@njit(cache=True)
def _hue_deg(a, b):
    if a == 0.0 and b == 0.0:
        return 0.0
    h = math.degrees(math.atan2(b, a))
    if h < 0.0:
        h += 360.0
    return h


@njit(cache=True)
def _in_hue_halfopen(h, lo, hi):
    if lo <= hi:
        return lo <= h < hi
    return h >= lo or h < hi


@njit(cache=True)
def _in_hue_closed(h, lo, hi):
    if lo <= hi:
        return lo <= h <= hi
    return h >= lo or h <= hi


@njit(cache=True)
def _in_interval(v, lo, lo_open, hi, hi_closed):
    if lo_open:
        if v <= lo:
            return False
    elif v < lo:
        return False
    if hi_closed:
        return v <= hi
    return v < hi


@njit(cache=True)
def classify_nb(L, a, b, tbl):
    C = math.hypot(a, b)
    h = _hue_deg(a, b)
    n = tbl.shape[0]
    for i in range(n):
        ok = True
        if tbl[i, 0] != 0.0 and not _in_hue_halfopen(h, tbl[i, 1], tbl[i, 2]):
            ok = False
        if ok and tbl[i, 3] != 0.0 and not _in_interval(
                L, tbl[i, 4], tbl[i, 5] != 0.0, tbl[i, 6], tbl[i, 7] != 0.0):
            ok = False
        if ok and tbl[i, 8] != 0.0 and not _in_interval(
                C, tbl[i, 9], False, tbl[i, 10], tbl[i, 11] != 0.0):
            ok = False
        if ok:
            return i
    # no exact region matched: fall back to hue wedge alone, then to the
    # first achromatic term
    for i in range(n):
        if tbl[i, 0] != 0.0 and _in_hue_halfopen(h, tbl[i, 1], tbl[i, 2]):
            return i
    for i in range(n):
        if tbl[i, 0] == 0.0:
            return i
    return 0


@njit(cache=True)
def passes_filter_nb(L, a, b, fp, tbl, allowed):
    if L < fp[0] or L > fp[1]:
        return False
    if fp[2] != 0.0:
        h = _hue_deg(a, b)
        if _in_hue_closed(h, fp[3], fp[4]) and fp[5] <= L <= fp[6]:
            return False
    if fp[7] != 0.0:
        return allowed[classify_nb(L, a, b, tbl)]
    return True


# ---------------------------------------------------------------------------
# nearest name bin
#
# Bins sit on a regular LAB lattice, so coordinate-wise rounding gives the
# exact nearest bin whenever the rounded cell is populated.  `dense` maps
# lattice cells to bin rows (-1 for holes); holes fall back to a full scan,
# which also realizes the documented lowest-index tie break.
# ---------------------------------------------------------------------------

@njit(cache=True)
def name_bin_nb(L, a, b, bins, dense, g0, g1, g2, spacing, n0, n1, n2):
    if n0 > 0:
        i0 = int(math.ceil((L - g0) / spacing - 0.5))
        i1 = int(math.ceil((a - g1) / spacing - 0.5))
        i2 = int(math.ceil((b - g2) / spacing - 0.5))
        if i0 < 0:
            i0 = 0
        elif i0 >= n0:
            i0 = n0 - 1
        if i1 < 0:
            i1 = 0
        elif i1 >= n1:
            i1 = n1 - 1
        if i2 < 0:
            i2 = 0
        elif i2 >= n2:
            i2 = n2 - 1
        idx = dense[(i0 * n1 + i1) * n2 + i2]
        if idx >= 0:
            return idx
    best = 0
    bd = 1.0e300
    for r in range(bins.shape[0]):
        d0 = bins[r, 0] - L
        d1 = bins[r, 1] - a
        d2 = bins[r, 2] - b
        d = d0 * d0 + d1 * d1 + d2 * d2
        if d < bd:
            bd = d
            best = r
    return best


# ---------------------------------------------------------------------------
# annealing state updates
#
# State arrays for a palette of m classes plus background (row m of D):
#   labs (m,3), nbin (m,), D (m+1,m+1) pairwise CIEDE2000, ND (m,m) name
#   differences.  `energies` holds [current_energy, best_energy].
# ---------------------------------------------------------------------------

@njit(cache=True)
def update_color_nb(i, labs, nbin, D, ND, bg, bins, dense,
                    g0, g1, g2, spacing, n0, n1, n2, tnorm):
    m = labs.shape[0]
    L = labs[i, 0]
    a = labs[i, 1]
    b = labs[i, 2]
    for j in range(m):
        if j == i:
            continue
        d = ciede2000_nb(L, a, b, labs[j, 0], labs[j, 1], labs[j, 2])
        D[i, j] = d
        D[j, i] = d
    D[i, i] = 0.0
    d = ciede2000_nb(L, a, b, bg[0], bg[1], bg[2])
    D[i, m] = d
    D[m, i] = d
    nb = name_bin_nb(L, a, b, bins, dense, g0, g1, g2, spacing, n0, n1, n2)
    nbin[i] = nb
    k = tnorm.shape[1]
    for j in range(m):
        if j == i:
            continue
        dot = 0.0
        for t in range(k):
            dot += tnorm[nb, t] * tnorm[nbin[j], t]
        v = 1.0 - dot
        ND[i, j] = v
        ND[j, i] = v
    ND[i, i] = 0.0


@njit(cache=True)
def init_state_nb(labs, nbin, D, ND, bg, bins, dense,
                  g0, g1, g2, spacing, n0, n1, n2, tnorm):
    m = labs.shape[0]
    D[m, m] = 0.0
    for i in range(m):
        update_color_nb(i, labs, nbin, D, ND, bg, bins, dense,
                        g0, g1, g2, spacing, n0, n1, n2, tnorm)


@njit(cache=True)
def palette_energy_nb(D, ND, w, omega0, omega1, omega2, ndf, cdf, pd_norm):
    m = ND.shape[0]
    epd = 0.0
    for j in range(m):
        for k in range(m):
            if j != k:
                epd += w[j, k] * D[j, k]
    nd = 0.0
    if m >= 2:
        for i in range(m - 1):
            for j in range(i + 1, m):
                nd += ND[i, j]
        nd *= 2.0 / (m * (m - 1.0))
    cd = 1.0e300
    for i in range(m + 1):
        for j in range(i + 1, m + 1):
            if D[i, j] < cd:
                cd = D[i, j]
    total = omega0 * (epd / pd_norm) + omega1 * ndf * nd + omega2 * cdf * cd
    return total, epd, nd, cd


@njit(cache=True)
def redraw_color_nb(labs, i, sigma, fp, tbl, allowed, rng):
    """Offset color i until the result is in gamut and passes the filter."""
    L0 = labs[i, 0]
    a0 = labs[i, 1]
    b0 = labs[i, 2]
    for _ in range(100):
        L = L0 + (2.0 * rng_uniform(rng) - 1.0) * sigma
        a = a0 + (2.0 * rng_uniform(rng) - 1.0) * sigma
        b = b0 + (2.0 * rng_uniform(rng) - 1.0) * sigma
        if L < 0.0:
            L = 0.0
        elif L > 100.0:
            L = 100.0
        if a < -128.0:
            a = -128.0
        elif a > 128.0:
            a = 128.0
        if b < -128.0:
            b = -128.0
        elif b > 128.0:
            b = 128.0
        if in_srgb_gamut_nb(L, a, b) and passes_filter_nb(L, a, b, fp, tbl, allowed):
            labs[i, 0] = L
            labs[i, 1] = a
            labs[i, 2] = b
            return True
    return False


@njit(cache=True)
def refine_nb(labs, nbin, D, ND, bg, locked, tau, max_attempts, sigma,
              fp, tbl, allowed, bins, dense, g0, g1, g2, spacing, n0, n1, n2,
              tnorm, rng):
    """Perturb members of sub-tau pairs until all pairs clear tau.

    Returns 0 on success, 1 when the attempt budget runs out, 2 when a
    violating pair is fully locked (background counts as locked).
    """
    m = labs.shape[0]
    attempts = 0
    while True:
        ok = True
        for i in range(m + 1):
            for j in range(i + 1, m + 1):
                if D[i, j] < tau:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return 0
        if attempts >= max_attempts:
            return 1
        attempts += 1
        for i in range(m + 1):
            for j in range(i + 1, m + 1):
                if D[i, j] >= tau:
                    continue
                i_locked = locked[i] if i < m else True
                j_locked = locked[j] if j < m else True
                if i_locked and j_locked:
                    return 2
                if not i_locked:
                    if redraw_color_nb(labs, i, sigma, fp, tbl, allowed, rng):
                        update_color_nb(i, labs, nbin, D, ND, bg, bins, dense,
                                        g0, g1, g2, spacing, n0, n1, n2, tnorm)
                if D[i, j] < tau and not j_locked:
                    if redraw_color_nb(labs, j, sigma, fp, tbl, allowed, rng):
                        update_color_nb(j, labs, nbin, D, ND, bg, bins, dense,
                                        g0, g1, g2, spacing, n0, n1, n2, tnorm)


@njit(cache=True)
def row_clears_tau_nb(i, labs, bg, tau):
    """True when color i clears tau against every other color and background."""
    m = labs.shape[0]
    L = labs[i, 0]
    a = labs[i, 1]
    b = labs[i, 2]
    if ciede2000_nb(L, a, b, bg[0], bg[1], bg[2]) < tau:
        return False
    for j in range(m):
        if j == i:
            continue
        if ciede2000_nb(L, a, b, labs[j, 0], labs[j, 1], labs[j, 2]) < tau:
            return False
    return True


@njit(cache=True)
def repair_row_nb(i, labs, nbin, D, ND, bg, tau, max_attempts, sigma,
                  fp, tbl, allowed, bins, dense, g0, g1, g2, spacing,
                  n0, n1, n2, tnorm, rng):
    """Redraw color i until its row clears tau.

    The caller guarantees every pair not involving i already clears tau, so
    redrawing i alone can repair the palette and partners never move.  The
    caches are only committed once a feasible position is found; failed
    attempts pay for the early-exit distance scan alone.  Returns 0 on
    success, 1 when the attempt budget runs out (caller restores the row).
    """
    ok = True
    m = labs.shape[0]
    for j in range(m + 1):
        if j != i and D[i, j] < tau:
            ok = False
            break
    if ok:
        return 0
    attempts = 0
    while attempts < max_attempts:
        attempts += 1
        if redraw_color_nb(labs, i, sigma, fp, tbl, allowed, rng):
            if row_clears_tau_nb(i, labs, bg, tau):
                update_color_nb(i, labs, nbin, D, ND, bg, bins, dense,
                                g0, g1, g2, spacing, n0, n1, n2, tnorm)
                return 0
    return 1


@njit(cache=True)
def swap_state_nb(i, j, labs, nbin, D, ND):
    """Exchange colors i and j in place, permuting the cached matrices.

    The color set is unchanged, so pairwise distances permute instead of
    being recomputed; applying the same swap again undoes it exactly.
    """
    m = labs.shape[0]
    for c in range(3):
        tmp = labs[i, c]
        labs[i, c] = labs[j, c]
        labs[j, c] = tmp
    t = nbin[i]
    nbin[i] = nbin[j]
    nbin[j] = t
    for k in range(m + 1):
        if k == i or k == j:
            continue
        tmp = D[i, k]
        D[i, k] = D[j, k]
        D[j, k] = tmp
        D[k, i] = D[i, k]
        D[k, j] = D[j, k]
    for k in range(m):
        if k == i or k == j:
            continue
        tmp = ND[i, k]
        ND[i, k] = ND[j, k]
        ND[j, k] = tmp
        ND[k, i] = ND[i, k]
        ND[k, j] = ND[j, k]


@njit(cache=True)
def restore_row_nb(i, snbin, labs, nbin, D, ND, srow_lab, srow_D, srow_ND):
    m = labs.shape[0]
    for c in range(3):
        labs[i, c] = srow_lab[c]
    nbin[i] = snbin
    for k in range(m + 1):
        D[i, k] = srow_D[k]
        D[k, i] = srow_D[k]
    for k in range(m):
        ND[i, k] = srow_ND[k]
        ND[k, i] = srow_ND[k]


@njit(cache=True)
def anneal_step_nb(labs, nbin, D, ND, srow_lab, srow_D, srow_ND, best_labs,
                   energies, bg, unlocked_idx, w, tnorm, bins, dense,
                   g0, g1, g2, spacing, n0, n1, n2, fp, tbl, allowed,
                   tau, sigma, swap_p, refine_max,
                   omega0, omega1, omega2, ndf, cdf, pd_norm,
                   temperature, n_proposals, rng):
    """Run one temperature level: n_proposals propose/repair/score/accept cycles.

    The chain only visits tau-feasible states: a perturbation of color i can
    only break pairs in row i (repaired by repair_row_nb), and a swap keeps
    the color set and therefore feasibility.  Rejected proposals are undone
    from the saved row, keeping each cycle O(m).
    """
    m = labs.shape[0]
    nu = unlocked_idx.shape[0]
    if nu == 0:
        return 0
    accepted = 0
    for _ in range(n_proposals):
        u = rng_uniform(rng)
        is_swap = u < swap_p and nu >= 2
        j = -1
        snbin = 0
        if is_swap:
            x = int(rng_uniform(rng) * nu)
            y = int(rng_uniform(rng) * (nu - 1))
            if y >= x:
                y += 1
            i = unlocked_idx[x]
            j = unlocked_idx[y]
            swap_state_nb(i, j, labs, nbin, D, ND)
        else:
            x = int(rng_uniform(rng) * nu)
            i = unlocked_idx[x]
            for c in range(3):
                srow_lab[c] = labs[i, c]
            snbin = nbin[i]
            for k in range(m + 1):
                srow_D[k] = D[i, k]
            for k in range(m):
                srow_ND[k] = ND[i, k]
            if redraw_color_nb(labs, i, sigma, fp, tbl, allowed, rng):
                update_color_nb(i, labs, nbin, D, ND, bg, bins, dense,
                                g0, g1, g2, spacing, n0, n1, n2, tnorm)
            status = repair_row_nb(i, labs, nbin, D, ND, bg, tau, refine_max,
                                   sigma, fp, tbl, allowed, bins, dense,
                                   g0, g1, g2, spacing, n0, n1, n2, tnorm,
                                   rng)
            if status != 0:
                restore_row_nb(i, snbin, labs, nbin, D, ND,
                               srow_lab, srow_D, srow_ND)
                continue

        e_new, _, _, _ = palette_energy_nb(D, ND, w, omega0, omega1,
                                           omega2, ndf, cdf, pd_norm)
        take = e_new >= energies[0]
        if not take:
            if rng_uniform(rng) < math.exp((e_new - energies[0]) / temperature):
                take = True
        if take:
            energies[0] = e_new
            accepted += 1
            if e_new > energies[1]:
                energies[1] = e_new
                for r in range(m):
                    for c in range(3):
                        best_labs[r, c] = labs[r, c]
        elif is_swap:
            swap_state_nb(i, j, labs, nbin, D, ND)
        else:
            restore_row_nb(i, snbin, labs, nbin, D, ND,
                           srow_lab, srow_D, srow_ND)
    return accepted
