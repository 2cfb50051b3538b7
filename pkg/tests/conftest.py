import numpy as np
import pytest

from dsbp import codes, tanner


@pytest.fixture(scope="session")
def hp_ds():
    return codes.hp_129_28()


@pytest.fixture(scope="session")
def hp_graph(hp_ds):
    return tanner.build(hp_ds)


@pytest.fixture(scope="session")
def hp_pair():
    raw = codes.hypergraph_product(
        codes.bch_parity_matrix(7, 4), codes.bch_parity_matrix(15, 7)
    )
    return raw, codes.fix_column_weights(raw)


@pytest.fixture()
def toy_code():
    return codes.StabilizerCode.from_strings(["XYI", "ZZY"])


@pytest.fixture()
def toy_ds(toy_code):
    return codes.ds_extend(toy_code)


def nullspace_basis(h):
    """GF(2) kernel basis of a parity-check matrix, for oracle enumeration."""
    from dsbp import gf2

    h = gf2.as_bit_matrix(h)
    rref, pivots = gf2.row_reduce(h)
    n = h.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.uint8)
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = rref[i, f]
        basis.append(v)
    return basis


def all_codewords(h):
    basis = nullspace_basis(h)
    n = h.shape[1]
    for mask in range(2 ** len(basis)):
        acc = np.zeros(n, dtype=np.uint8)
        for i, vec in enumerate(basis):
            if (mask >> i) & 1:
                acc ^= vec
        yield acc
