import concurrent.futures
import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from timeit import default_timer as timer
from typing import Dict, List, Optional

from boxlab.boxspace import (
    BoxSpace,
    coarse_union_offsets,
    components,
    dalpha_check,
    dalpha_estimate,
    expansion_report,
    measured_constant,
)
from boxlab.cayley import CayleyGraph, compute_metrics
from boxlab.common.boxlab_dataclasses import ComponentData, DAlphaParams, GroupSpec
from boxlab.common.exceptions import EstimationError
from boxlab.common.typing import Rational
from boxlab.logic import BoxlabFiltrationLogic, BoxSpaceControllerLogic
from boxlab.utils import SerialExecutor, create_csv, write_rows

logger = logging.getLogger(__name__)


class BoxSpaceController(BoxSpaceControllerLogic):
    """Builds the components of a box space, measures them and evaluates D_alpha.

    filtration: BoxlabFiltrationLogic
        the schedule whose quotients G/N_1, ..., G/N_count form the box space

    count: int
        number of components to build

    alpha: Rational
        exponent for the D_alpha check; when None only the estimate is reported

    K: Rational
        constant for the D_alpha check; when None the measured constant
        min diam / order^alpha is used

    executor: concurrent.futures.Executor class
        a class similar to ThreadPoolExecutor whose instances implement .submit()

    executor_type: str
        "local" (ThreadPoolExecutor) or "serial"; ignored when executor is given

    max_vertices: int
        vertex budget of every component

    max_subset_order: int
        components up to this order also get the exact Cheeger constant

    tolerance: float
        eigensolver tolerance

    spectral: bool
        if False, only diameters and girths are computed

    csv_filename: str
        if given, one row per component is appended to this file
    """

    AVAILABLE_EXECUTORS = {"local": ThreadPoolExecutor, "serial": SerialExecutor}
    CSV_HEADER = [
        "k",
        "family",
        "params",
        "order",
        "diameter",
        "girth",
        "lambda1",
        "cheeger_lower",
        "cheeger_upper",
        "diam_over_order_alpha",
    ]

    def __init__(
        self,
        filtration: BoxlabFiltrationLogic,
        count: int,
        alpha: Rational = None,
        K: Rational = None,
        executor: concurrent.futures.Executor = None,
        executor_type: str = "local",
        max_vertices: int = None,
        max_subset_order: int = 22,
        tolerance: float = 1e-9,
        spectral: bool = True,
        csv_filename: str = None,
    ):
        self.filtration = filtration
        self.count = count
        self.alpha = None if alpha is None else Fraction(alpha)
        self.K = K if K is None or isinstance(K, float) else Fraction(K)
        self.executor = executor
        self.executor_type = executor_type
        self.max_vertices = max_vertices
        self.max_subset_order = max_subset_order
        self.tolerance = tolerance
        self.spectral = spectral
        self.csv_filename = csv_filename
        self.specs: List[GroupSpec] = []

    def on_components_init(self) -> None:
        self.specs = components(self.filtration, self.count, self.max_vertices)
        if not self.executor:
            try:
                self.executor = self.AVAILABLE_EXECUTORS[self.executor_type]
            except KeyError:
                logger.warning(
                    f"Could not find {self.executor_type} in the available executors {list(self.AVAILABLE_EXECUTORS)}, defaulting to local"
                )
                self.executor = self.AVAILABLE_EXECUTORS["local"]
        logger.debug(f"The selected executor is {self.executor}")
        if self.csv_filename:
            create_csv(filename=self.csv_filename, header=self.CSV_HEADER)

    def build_component(self, k: int, spec: GroupSpec) -> ComponentData:
        start = timer()
        graph = CayleyGraph.build(spec, max_size=self.max_vertices)
        built = timer()
        metrics = compute_metrics(
            graph,
            max_subset_order=self.max_subset_order,
            tol=self.tolerance,
            spectral=self.spectral,
        )
        logger.info(f"component {k}: {spec} with {metrics.order} vertices, diameter {metrics.diameter}")
        return ComponentData(
            k=k,
            spec=spec,
            metrics=metrics,
            build_runtime=built - start,
            metrics_runtime=timer() - built,
        )

    def on_components_submit(self) -> list:
        with self.executor() as executor:
            tasks = [
                executor.submit(self.build_component, k, spec)
                for k, spec in enumerate(self.specs, start=1)
            ]
        return tasks

    def on_components_receive(self, tasks: list) -> Dict[int, ComponentData]:
        results = {}
        for task in tasks:
            component = task.result()
            results[component.k] = component
        return results

    def on_boxspace_assemble(self, results: Dict[int, ComponentData]) -> BoxSpace:
        ordered = [results[k] for k in sorted(results)]
        for component, offset in zip(ordered, coarse_union_offsets([c.metrics for c in ordered])):
            component.offset = offset
        return BoxSpace(filtration=self.filtration.to_json(), components=ordered)

    def on_boxspace_evaluate(self, boxspace: BoxSpace) -> dict:
        metrics = boxspace.metrics
        report = {"gap_rule": boxspace.gap_rule_holds(), "dalpha": None}
        if self.alpha is not None:
            K = self.K if self.K is not None else measured_constant(metrics, self.alpha)
            report["dalpha"] = dalpha_check(metrics, DAlphaParams(self.alpha, K))
            report["dalpha"]["K_source"] = "given" if self.K is not None else "measured"
        try:
            report["estimate"] = dalpha_estimate(metrics)
        except EstimationError as exp:
            report["estimate"] = {"error": str(exp)}
        report["expansion"] = expansion_report(metrics) if self.spectral else None
        return report

    def component_rows(self, boxspace: BoxSpace) -> List[dict]:
        rows = []
        for c in boxspace.components:
            m = c.metrics
            rows.append(
                {
                    "k": c.k,
                    "family": c.spec.family,
                    "params": " ".join(str(p) for p in c.spec.params),
                    "order": m.order,
                    "diameter": m.diameter,
                    "girth": "acyclic" if m.girth is None else m.girth,
                    "lambda1": m.lambda1,
                    "cheeger_lower": m.cheeger_lower,
                    "cheeger_upper": m.cheeger_upper,
                    "diam_over_order_alpha": None
                    if self.alpha is None
                    else m.diameter / m.order ** float(self.alpha),
                }
            )
        return rows

    def run(self) -> dict:
        """Builds, assembles and evaluates the box space.

        Returns
        -------
        dict
            {"filtration", "components" (one CSV-shaped row each), "offsets",
            "evaluation"}; runtimes are collected separately under "timing"
        """
        self.on_components_init()
        tasks = self.on_components_submit()
        results = self.on_components_receive(tasks)
        boxspace = self.on_boxspace_assemble(results)
        evaluation = self.on_boxspace_evaluate(boxspace)
        rows = self.component_rows(boxspace)
        if self.csv_filename:
            write_rows(self.csv_filename, self.CSV_HEADER, rows)
        self.boxspace: Optional[BoxSpace] = boxspace
        return {
            "filtration": boxspace.filtration,
            "components": rows,
            "metrics": [m.to_json() for m in boxspace.metrics],
            "offsets": boxspace.offsets,
            "evaluation": evaluation,
            "timing": {
                str(c.k): {"build": c.build_runtime, "metrics": c.metrics_runtime}
                for c in boxspace.components
            },
        }
