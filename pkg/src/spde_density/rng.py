"""Counter-based random streams.

Normals are generated in fixed blocks of 1024 index rows from a Philox
generator keyed by (seed, domain, block index); path or sample ``index``
always maps to the same block row, so draws are reproducible bit-for-bit
regardless of chunking or worker count.  Domains separate consumers that
would otherwise share draws under equal seeds.
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_MASK48 = (1 << 48) - 1

BLOCK = 1024

FEYNMAN_KAC = 1
ORACLE = 2
SMOKE = 3


def _block_generator(seed, domain, block_index):
    key = np.array(
        [
            int(seed) & _MASK64,
            ((int(domain) & 0xFFFF) << 48) | (int(block_index) & _MASK48),
        ],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


def _block(seed, domain, block_index, n_cols):
    return _block_generator(seed, domain, block_index).standard_normal((BLOCK, n_cols))


def normals(seed, domain, index, n):
    """n standard normals for one path/sample index."""
    block_index, row = divmod(int(index), BLOCK)
    return _block(seed, domain, block_index, n)[row]


def normal_block(seed, domain, start, n_rows, n_cols):
    """Rows ``start .. start+n_rows-1`` of the per-index normal streams."""
    out = np.empty((n_rows, n_cols))
    filled = 0
    while filled < n_rows:
        block_index, row = divmod(int(start) + filled, BLOCK)
        take = min(BLOCK - row, n_rows - filled)
        out[filled : filled + take] = _block(seed, domain, block_index, n_cols)[
            row : row + take
        ]
        filled += take
    return out
