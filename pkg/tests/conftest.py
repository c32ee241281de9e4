import pytest

from pathspectra import count_paths_by_length, orient
from pathspectra import zoo
from pathspectra.coherence import coherent_paths
from pathspectra.pathcount import LengthSpectrum


@pytest.fixture(scope="session")
def ass5_pack():
    """Associahedron on 5 nodes with its orientation and both spectra."""
    P = zoo.loday_associahedron(5)
    c = (1, 2, 3, 4, 5)
    G = orient(P, c)
    mono = count_paths_by_length(G)
    pairs = list(coherent_paths(P, c, graph=G))
    counts = {}
    for path, _ in pairs:
        counts[path.length] = counts.get(path.length, 0) + 1
    return {"P": P, "c": c, "G": G, "monotone": mono,
            "coherent": LengthSpectrum(counts), "pairs": pairs}


@pytest.fixture(scope="session")
def ass6_pack():
    P = zoo.loday_associahedron(6)
    c = (1, 2, 3, 4, 5, 6)
    G = orient(P, c)
    mono = count_paths_by_length(G)
    pairs = list(coherent_paths(P, c, graph=G))
    counts = {}
    for path, _ in pairs:
        counts[path.length] = counts.get(path.length, 0) + 1
    return {"P": P, "c": c, "G": G, "monotone": mono,
            "coherent": LengthSpectrum(counts), "pairs": pairs}
