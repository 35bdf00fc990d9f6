import numpy as np
import pytest

import geopaths as gp


class Exp1DMetric(gp.MetricField):
    """M(x) = e^{2x} on the line; geodesics have the closed form
    c(t) = log((1-t) e^{c0} + t e^{c1}) and length |e^{c1} - e^{c0}|."""

    dim = 1

    def metric_at(self, x):
        return np.array([[np.exp(2.0 * x[0])]])

    def dvec_metric_at(self, x):
        return np.array([[2.0 * np.exp(2.0 * x[0])]])


class ConformalMetric(gp.MetricField):
    """M(x) = (1 + x0^2) I in the plane."""

    dim = 2

    def metric_at(self, x):
        return (1.0 + x[0] ** 2) * np.eye(2)

    def dvec_metric_at(self, x):
        d = np.zeros((4, 2))
        d[0, 0] = 2.0 * x[0]
        d[3, 0] = 2.0 * x[0]
        return d


class ThresholdMetric(gp.DiagonalMetricField):
    """Loses positive definiteness once x0 exceeds 0.75."""

    dim = 2

    def diag_at(self, x):
        return np.array([1.0 - 2.0 * max(0.0, x[0] - 0.75), 1.0])

    def diag_jacobian_at(self, x):
        jac = np.zeros((2, 2))
        if x[0] > 0.75:
            jac[0, 0] = -2.0
        return jac


@pytest.fixture(scope="session")
def semicircle():
    return gp.gen_semicircle(200, 0.01, seed=1)


@pytest.fixture(scope="session")
def semicircle_metric(semicircle):
    return gp.LocalDiagMetric(semicircle.points, bandwidth=0.15)


@pytest.fixture(scope="session")
def flat2():
    return gp.ConstantMetric.identity(2)
