from HoCat.engine.partition import Partition, equivalence_counterexample, partition_of_relation


def test_generated_partition():
    part = Partition.generated_by([1, 2, 3, 4, 5], [(1, 2), (4, 3), (2, 5)])
    assert part.classes == ((1, 2, 5), (3, 4))
    assert part.relates(5, 1)
    assert not part.relates(1, 3)
    assert part.representative(5) == 1
    assert len(part) == 2


def test_discrete_and_meet():
    discrete = Partition.discrete("abc")
    assert discrete.is_discrete
    coarse = Partition([["a", "b", "c"]])
    assert (coarse & discrete) == discrete
    assert (coarse & Partition([["a", "b"], ["c"]])).classes == (("a", "b"), ("c",))


def test_equivalence_counterexample():
    pairs = {(1, 1), (2, 2), (1, 2)}
    assert "symmetric" in equivalence_counterexample([1, 2], lambda a, b: (a, b) in pairs)
    pairs.add((2, 1))
    assert equivalence_counterexample([1, 2], lambda a, b: (a, b) in pairs) is None
    assert partition_of_relation([1, 2], lambda a, b: (a, b) in pairs).classes == ((1, 2),)
