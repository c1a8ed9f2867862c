"""numpy implementations of the compiled kernels (same signatures)."""
import numpy as np


def half4_residual_batch(X, bsub, bghmt, conj_a_sub, c2inv, c2d):
    B, n = X.shape
    lhs = np.einsum("sk,kg,kh->sgh", X, bsub, bsub, optimize=True)
    rhs = c2inv * bghmt[None] * X[:, :, None] * X[:, None, :] * conj_a_sub[None]
    return (lhs - rhs + c2d).reshape(B, n * n)


def verlinde(S):
    return np.einsum("ax,bx,cx,x->abc", S, S, S.conj(), 1 / S[0], optimize=True)
