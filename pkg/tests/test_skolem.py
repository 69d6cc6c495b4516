import pytest

from CyclicHWP.classes.classes import SkolemSeq
from CyclicHWP.errors import SearchBudgetExceeded
from CyclicHWP.functions import skolem
from CyclicHWP.functions.skolem import (
    SEARCH_LIMIT,
    flavor_of,
    generate_skolem,
    positions_of,
    search_skolem,
    validate_skolem,
)


@pytest.mark.parametrize(
    "order,entries",
    [(1, (1,)), (2, (1, 3)), (3, (1, 3, 4)), (4, (1, 4, 5, 3))],
)
def test_small_orders(order, entries):
    assert generate_skolem(order).entries == entries


def test_flavors():
    assert [flavor_of(order) for order in range(1, 9)] == [
        "ordinary", "hooked", "hooked", "ordinary",
        "ordinary", "hooked", "hooked", "ordinary",
    ]
    assert generate_skolem(6).flavor == "hooked"
    assert generate_skolem(9).flavor == "ordinary"


def test_hooked_positions_skip_2n():
    assert positions_of(2) == {1, 2, 3, 5}
    assert positions_of(4) == set(range(1, 9))


def test_pairs_cover_positions():
    seq = generate_skolem(3)
    assert seq.pairs() == [(1, 2), (3, 5), (4, 7)]
    assert seq.s(2) == 3


@pytest.mark.parametrize("order", range(1, 201))
def test_generated_sequences_are_valid(order):
    seq = generate_skolem(order)
    assert seq.order == order
    assert validate_skolem(seq)


def test_closed_forms_beyond_search_limit():
    for order in range(SEARCH_LIMIT + 1, SEARCH_LIMIT + 41):
        assert validate_skolem(generate_skolem(order)), order


def test_generation_is_deterministic():
    assert generate_skolem(7).entries == generate_skolem(7).entries


def test_validate_rejects_tampering():
    seq = generate_skolem(4)
    assert not validate_skolem(SkolemSeq(4, (1, 4, 5, 2), "ordinary"))
    assert not validate_skolem(SkolemSeq(4, seq.entries, "hooked"))
    assert not validate_skolem(SkolemSeq(4, seq.entries[:3], "ordinary"))


def test_order_must_be_positive():
    with pytest.raises(ValueError):
        generate_skolem(0)


def test_search_finds_small_orders():
    assert search_skolem(4) == [1, 4, 5, 3]
    assert search_skolem(2) == [1, 3]


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded):
        search_skolem(10, budget=3)


def test_closed_form_fallback_is_bounded(monkeypatch):
    generate_skolem.cache_clear()
    monkeypatch.setattr(skolem, "_closed_form", lambda order: None)
    monkeypatch.setattr(skolem, "search_skolem", lambda order: search_skolem(order, budget=5))
    with pytest.raises(SearchBudgetExceeded):
        generate_skolem(13)
    generate_skolem.cache_clear()
