import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from soilcolor import DomainError, LabColor, match
from soilcolor.colorspace import srgb_to_lab
from soilcolor.estimators import ColorConverter, NearestChipClassifier


class TestColorConverter:
    def test_srgb_to_lab_matches_core_chain(self):
        rng = np.random.default_rng(2)
        rgb = rng.integers(0, 256, size=(40, 3))
        got = ColorConverter(source="srgb", target="lab").fit(rgb).transform(rgb)
        np.testing.assert_allclose(got, srgb_to_lab(rgb / 255.0), atol=1e-12)

    def test_lab_to_srgb_quantizes(self):
        got = ColorConverter(source="lab", target="srgb").fit_transform([[100.0, 0.0, 0.0]])
        assert got.tolist() == [[255.0, 255.0, 255.0]]

    def test_round_trip_within_one(self):
        rng = np.random.default_rng(4)
        rgb = rng.integers(0, 256, size=(100, 3)).astype(float)
        lab = ColorConverter("srgb", "lab").fit_transform(rgb)
        back = ColorConverter("lab", "srgb").fit_transform(lab)
        assert np.abs(back - rgb).max() <= 1

    def test_gamut_flags(self):
        conv = ColorConverter(source="lab", target="srgb").fit([[50.0, 0.0, 0.0]])
        _, clipped = conv.transform_with_gamut([[50.0, 80.0, -80.0], [50.0, 0.0, 0.0]])
        assert clipped.tolist() == [True, False]

    def test_cmyk_target(self):
        got = ColorConverter(source="srgb", target="cmyk").fit_transform([[0, 0, 0], [255, 0, 0]])
        np.testing.assert_allclose(got, [[0, 0, 0, 1], [0, 1, 1, 0]], atol=1e-12)

    def test_lch_target(self):
        got = ColorConverter(source="lab", target="lch").fit_transform([[50.0, 3.0, 4.0]])
        np.testing.assert_allclose(got[0], [50.0, 5.0, 53.13010235415598], atol=1e-9)

    def test_identity(self):
        rgb = np.array([[12.0, 200.0, 255.0]])
        got = ColorConverter(source="srgb", target="srgb").fit_transform(rgb)
        assert got.tolist() == rgb.tolist()

    def test_invalid_spaces(self):
        with pytest.raises(DomainError):
            ColorConverter(source="hsl", target="lab").fit([[0, 0, 0]])
        with pytest.raises(DomainError):
            ColorConverter(source="cmyk", target="lab").fit([[0, 0, 0]])

    def test_wrong_channel_count(self):
        with pytest.raises(DomainError):
            ColorConverter().fit([[0.0, 0.0, 0.0]]).transform([[1.0, 2.0, 3.0, 4.0]])

    def test_sklearn_params(self):
        conv = ColorConverter(source="xyz", target="lab", illuminant="C")
        assert conv.get_params() == {"source": "xyz", "target": "lab", "illuminant": "C"}
        twin = clone(conv)
        assert twin.get_params() == conv.get_params()


class TestNearestChipClassifier:
    def test_fit_predict_self(self, bundled_db):
        clf = NearestChipClassifier(method="de2000")
        X = bundled_db.lab_matrix()
        y = [str(c) for c in bundled_db.codes()]
        predictions = clf.fit(X, y).predict(X)
        assert predictions.tolist() == y

    def test_from_database_agrees_with_match(self, bundled_db):
        clf = NearestChipClassifier.from_database(bundled_db, method="de1994")
        queries = bundled_db.lab_matrix()[:20] + np.array([1.5, -0.5, 0.8])
        got = clf.predict(queries)
        for row, predicted in zip(queries, got):
            expected = match(LabColor(*row), bundled_db, "de1994").best
            assert predicted == str(expected)

    def test_score_is_exact_code_accuracy(self, bundled_db):
        clf = NearestChipClassifier.from_database(bundled_db)
        X = bundled_db.lab_matrix()
        y = [str(c) for c in bundled_db.codes()]
        assert clf.score(X, y) == 1.0

    def test_pages_restriction(self, bundled_db):
        clf = NearestChipClassifier(method="de2000", pages=["5YR"])
        clf.fit(bundled_db.lab_matrix(), [str(c) for c in bundled_db.codes()])
        assert len(clf.classes_) == 34
        assert all(code.startswith("5YR ") for code in clf.classes_)
        predictions = clf.predict(bundled_db.lab_matrix()[:10])
        assert all(p.startswith("5YR ") for p in predictions)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            NearestChipClassifier().predict([[50.0, 0.0, 0.0]])

    def test_invalid_codes_rejected(self):
        with pytest.raises(Exception):
            NearestChipClassifier().fit([[50.0, 0.0, 0.0]], ["not-a-code"])

    def test_match_method(self, bundled_db):
        clf = NearestChipClassifier.from_database(bundled_db)
        chip = bundled_db.get("10YR 5/4")
        results = clf.match([[chip.lab.l, chip.lab.a, chip.lab.b]], k=3)
        assert len(results) == 1
        assert str(results[0].best) == "10YR 5/4"
        assert results[0].ranked[0][1] == 0.0

    def test_pipeline_composition(self, bundled_db):
        from soilcolor.colorspace import lab_to_srgb

        rgb, clipped = lab_to_srgb(bundled_db.lab_matrix())
        # a handful of bright high-chroma chips clip in sRGB; fit on the rest
        in_gamut = ~clipped
        rgb = rgb[in_gamut]
        y = [str(c) for c, keep in zip(bundled_db.codes(), in_gamut) if keep]
        pipeline = Pipeline(
            [
                ("lab", ColorConverter(source="srgb", target="lab")),
                ("chip", NearestChipClassifier(method="de2000")),
            ]
        )
        pipeline.fit(rgb, y)
        assert pipeline.predict(rgb).tolist() == y

    def test_clone_and_params(self):
        clf = NearestChipClassifier(method="cmc", pages=["5YR"])
        params = clf.get_params()
        assert params == {"method": "cmc", "pages": ["5YR"]}
        assert clone(clf).get_params() == params
