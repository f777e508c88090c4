"""Neural layers with hand-derived backward passes.

All math is float64 on plain numpy arrays. Forward functions return a
cache consumed by the matching backward function; parameter gradients
are accumulated into a dict keyed like the parameter dict.

GRU cell (reset r, update u, candidate c):

    r = sigmoid(x Wr^T + h Ur^T + br)
    u = sigmoid(x Wu^T + h Uu^T + bu)
    c = tanh(x Wc^T + (r * h) Uc^T + bc)
    h' = (1 - u) * c + u * h

Stacked weights hold the three gates as [r; u; c] along axis 0.
Step masks freeze the state at padded positions.
"""

from __future__ import annotations

import numpy as np


def sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def gru_step_forward(x, h_prev, W, U, b):
    H = h_prev.shape[1]
    g = x @ W.T + b
    pre_r = g[:, :H] + h_prev @ U[:H].T
    pre_u = g[:, H:2 * H] + h_prev @ U[H:2 * H].T
    r = sigmoid(pre_r)
    u = sigmoid(pre_u)
    rh = r * h_prev
    pre_c = g[:, 2 * H:] + rh @ U[2 * H:].T
    c = np.tanh(pre_c)
    h = (1.0 - u) * c + u * h_prev
    cache = (x, h_prev, r, u, c, rh)
    return h, cache


def gru_step_backward(dh, cache, W, U, dW, dU, db):
    x, h_prev, r, u, c, rh = cache
    H = h_prev.shape[1]

    dc = dh * (1.0 - u)
    du = dh * (h_prev - c)
    dh_prev = dh * u

    dpre_c = dc * (1.0 - c * c)
    dpre_u = du * u * (1.0 - u)

    drh = dpre_c @ U[2 * H:]
    dr = drh * h_prev
    dh_prev += drh * r
    dpre_r = dr * r * (1.0 - r)

    dh_prev += dpre_r @ U[:H] + dpre_u @ U[H:2 * H]

    dg = np.concatenate([dpre_r, dpre_u, dpre_c], axis=1)
    dx = dg @ W
    dW += dg.T @ x
    dU[:H] += dpre_r.T @ h_prev
    dU[H:2 * H] += dpre_u.T @ h_prev
    dU[2 * H:] += dpre_c.T @ rh
    db += dg.sum(axis=0)
    return dx, dh_prev


def gru_forward(xs, mask, h0, W, U, b):
    """Scan over time. xs: (T, B, E); mask: (T, B) in {0,1}.
    Masked steps leave the state untouched."""
    T, B, _ = xs.shape
    H = h0.shape[1]
    hs = np.empty((T, B, H))
    caches = []
    h = h0
    for t in range(T):
        h_new, cache = gru_step_forward(xs[t], h, W, U, b)
        m = mask[t][:, None]
        h = m * h_new + (1.0 - m) * h
        caches.append((cache, m))
        hs[t] = h
    return hs, h, caches


def gru_backward(dhs, dh_last, caches, W, U):
    """dhs: per-step grads (T, B, H) or None; dh_last: grad on final state."""
    T = len(caches)
    dW = np.zeros_like(W)
    dU = np.zeros_like(U)
    db = np.zeros(W.shape[0])
    dxs = [None] * T
    dh = dh_last.copy()
    for t in range(T - 1, -1, -1):
        if dhs is not None:
            dh = dh + dhs[t]
        cache, m = caches[t]
        dh_new = dh * m
        dh_carry = dh * (1.0 - m)
        dx, dh_prev = gru_step_backward(dh_new, cache, W, U, dW, dU, db)
        dxs[t] = dx
        dh = dh_prev + dh_carry
    return np.stack(dxs), dh, dW, dU, db


def dense_forward(x, W, b):
    return x @ W.T + b, x


def dense_backward(dout, x, W, dW, db):
    dW += dout.T @ x
    db += dout.sum(axis=0)
    return dout @ W


def relu_forward(x):
    out = np.maximum(x, 0.0)
    return out, (x > 0)


def relu_backward(dout, mask):
    return dout * mask


def dropout_forward(x, p: float, rng: np.random.Generator | None):
    """Inverted dropout; identity when p == 0 or rng is None (inference)."""
    if p <= 0.0 or rng is None:
        return x, None
    keep = (rng.random(x.shape) >= p).astype(np.float64) / (1.0 - p)
    return x * keep, keep


def dropout_backward(dout, keep):
    if keep is None:
        return dout
    return dout * keep


def mlp_head_forward(z, params, prefix, rng, dropout_p):
    """Four affine layers (hidden width from the parameter shapes), ReLU
    and dropout between them, linear output."""
    x = z
    caches = []
    for layer in range(4):
        W = params[f"{prefix}_W{layer}"]
        b = params[f"{prefix}_b{layer}"]
        out, x_in = dense_forward(x, W, b)
        if layer < 3:
            act, relu_mask = relu_forward(out)
            dropped, keep = dropout_forward(act, dropout_p, rng)
            caches.append((x_in, relu_mask, keep))
            x = dropped
        else:
            caches.append((x_in, None, None))
            x = out
    return x, caches


def mlp_head_backward(dout, caches, params, prefix, grads):
    dx = dout
    for layer in range(3, -1, -1):
        x_in, relu_mask, keep = caches[layer]
        W = params[f"{prefix}_W{layer}"]
        if layer < 3:
            dx = dropout_backward(dx, keep)
            dx = relu_backward(dx, relu_mask)
        dx = dense_backward(dx, x_in, W,
                            grads[f"{prefix}_W{layer}"],
                            grads[f"{prefix}_b{layer}"])
    return dx
