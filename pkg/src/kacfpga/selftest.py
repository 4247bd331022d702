"""Mock-group KAC vectors, checked by hand modulo 101."""

from kacfpga import kac
from kacfpga.errors import IdNotInSubset
from kacfpga.pairing import MockGroup

MESSAGE = bytes(range(16))


def mock_vectors():
    """Values for alpha=2, gamma=5, n=3, i=2, r=7, S={1,2} in the mock group."""
    group = MockGroup(101)
    keypair = kac.setup(group, 3, alpha=2, gamma=5)
    mpk = keypair.mpk
    ct = kac.encrypt(mpk, 2, MESSAGE, r=7)
    bundle = kac.aggregate_key(keypair.msk, mpk, {1, 2})
    return {
        "powers": {j: mpk.powers_g1[j].exponent for j in mpk.power_indices()},
        "gamma_p": mpk.gamma_g1.exponent,
        "c0": ct.c0.exponent,
        "c1": ct.c1.exponent,
        "mask_seed": kac.encryption_seed(mpk, 7).exponent,
        "a_s": bundle.a.exponent,
        "sk_s": bundle.sk.exponent,
        "b_2": bundle.b[2].exponent,
        "pair_a_c1": group.pair(bundle.a, ct.c1).exponent,
        "pair_skb_c0": group.pair(group.g1_add(bundle.sk, bundle.b[2]), ct.c0).exponent,
        "quotient": kac.decryption_seed(bundle, ct).exponent,
        "recovered": kac.decrypt(bundle, ct),
    }


EXPECTED = {
    "powers": {0: 1, 1: 2, 2: 4, 3: 8, 5: 32, 6: 64},
    "gamma_p": 5,
    "c0": 7,
    "c1": 63,
    "mask_seed": 11,
    "a_s": 12,
    "sk_s": 60,
    "b_2": 32,
    "pair_a_c1": 49,
    "pair_skb_c0": 38,
    "quotient": 11,
    "recovered": MESSAGE,
}


def run():
    """Yield (check name, passed) pairs."""
    got = mock_vectors()
    for name, want in EXPECTED.items():
        yield f"vector {name}", got[name] == want

    group = MockGroup(101)
    keypair = kac.setup(group, 3, alpha=2, gamma=5)
    subsets = [{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}]
    ok = True
    for subset in subsets:
        bundle = kac.aggregate_key(keypair.msk, keypair.mpk, subset)
        for i in range(1, 4):
            ct = kac.encrypt(keypair.mpk, i, MESSAGE, r=3 + i)
            if i in subset:
                ok &= kac.decrypt(bundle, ct) == MESSAGE
            else:
                try:
                    kac.decrypt(bundle, ct)
                    ok = False
                except IdNotInSubset:
                    pass
                ok &= kac.decrypt_outside_subset(keypair.mpk, bundle, ct) != MESSAGE
    yield "mock roundtrip and exclusion over all subsets of [1,3]", ok
