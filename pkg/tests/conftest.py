import pathlib

import pytest

from tspvqe import load_instance

INSTANCE_DIR = pathlib.Path(__file__).resolve().parent.parent / "instances"


def read_instance(name):
    return load_instance(INSTANCE_DIR.joinpath(name).read_text())


@pytest.fixture(scope="session")
def landscape_instance():
    # 4-node undirected TSP; optimal cycles 1-2-4-3-1 / 1-3-4-2-1 cost 13
    return read_instance("landscape.json")


@pytest.fixture(scope="session")
def counterexample_instance():
    # 5-edge graph missing (1,4); with A=11, B=1 the exhaustive minimum (14)
    # is an invalid assignment while the best valid tour costs 22
    return read_instance("counterexample.json")


@pytest.fixture(scope="session")
def complete4_instance():
    # complete 4-node graph; optimal tours 1-3-2-4-1 / 1-4-2-3-1 cost 11
    return load_instance(
        '{"nodes": 4, "directed": false, "variant": "tsp",'
        ' "edges": [[1,2,1],[2,3,3],[3,4,8],[1,4,5],[1,3,1],[2,4,2]],'
        ' "penalty_a": 9, "penalty_b": 1}'
    )
