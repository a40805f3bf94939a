import pytest

from lifesent import Document, DomainCorpus, Label, NbModel


def doc(text: str) -> Document:
    return Document.from_text(text)


def make_corpus(name, records) -> DomainCorpus:
    """records: iterable of (label, text) pairs."""
    return DomainCorpus(
        name=name,
        documents=tuple(doc(text) for _, text in records),
        labels=tuple(label for label, _ in records),
    )


@pytest.fixture
def tiny_model() -> NbModel:
    """Two documents, three-word vocabulary, Laplace smoothing.

    Likelihoods work out to friendly fractions: P(good|pos) = 1/2,
    P(good|neg) = 1/5, P(bad|pos) = 1/6, P(bad|neg) = 2/5.
    """
    return NbModel.fit(
        [doc("good good movie"), doc("bad movie")],
        [Label.POS, Label.NEG],
        smoothing=1.0,
    )
