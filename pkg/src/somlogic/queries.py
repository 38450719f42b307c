"""Evaluation of query files against the models of a trained map

Each statement goes to the semantics that can answer it: strict and
typicality inclusions to the preferential model, fuzzy axioms and degree
queries to the fuzzy model and probability queries to the probability
model. The outcome of every line is collected in a :class:`RunReport`.
"""
import json
import logging
from somlogic.concepts import (
    Atom, StrictInclusion, DefeasibleInclusion, FuzzyInclusion,
    FuzzyAssertion, CheckAxiom, Prob, CondProb, ProbGivenElement, Likelihood,
    InclusionDegree, Membership, Plausibility)
from somlogic.cwm import GENERAL
from somlogic.exceptions import SomLogicError, ConfigurationError
from somlogic.fuzzy import FuzzyModel
from somlogic.metrics import plausibility
from somlogic.parser import parse_query_file, print_query
from somlogic.probability import build_prob

MODES = ("pref", "fuzzy")

# fast tests first with an exact fallback, fast tests only, or exact only
STRATEGIES = ("default", "fast", "exact")

HOLDS = "holds"
FAILS = "fails"
VALUE = "value"
ERROR = "error"


class QueryOutcome(object):
    """Result of one line of a query file

    :param int line: 1-based line number
    :param str text: the statement as written
    :param str verdict: holds, fails, value or error
    """

    # pylint: disable=too-many-instance-attributes
    def __init__(self, line, text, verdict, **details):
        super(QueryOutcome, self).__init__()
        self.line = line
        self.text = text
        self.verdict = verdict
        self.value = details.get("value")
        self.method = details.get("method")
        self.counterexample = details.get("counterexample")
        self.plausibility = details.get("plausibility")
        self.witness = details.get("witness")
        self.note = details.get("note")
        self.error = details.get("error")

    def to_dict(self):
        """Serializable form, leaving out empty fields

        :rtype: :class:`dict`
        """
        retval = {"line": self.line, "query": self.text,
                  "verdict": self.verdict}
        for key in ("value", "method", "counterexample", "plausibility",
                    "witness", "note", "error"):
            if getattr(self, key) is not None:
                retval[key] = getattr(self, key)
        return retval

    def format(self):
        """One line, human readable form

        :rtype: :class:`str`
        """
        if self.verdict == ERROR:
            return "[error] line {0}: {1}".format(self.line, self.error)
        parts = ["[{0}] {1}".format(self.verdict, self.text)]
        if self.value is not None:
            parts[0] += " = {0!r}".format(self.value)
        for key in ("method", "counterexample", "plausibility", "witness",
                    "note"):
            value = getattr(self, key)
            if value is not None:
                parts.append("{0}={1}".format(key, value))
        return "  ".join(parts)


class RunReport(object):
    """Ordered outcomes of a query file, one per statement"""

    def __init__(self, outcomes=()):
        super(RunReport, self).__init__()
        self.outcomes = list(outcomes)

    def count(self, verdict):
        """Number of outcomes with a given verdict

        :param str verdict: holds, fails, value or error
        :rtype: :class:`int`
        """
        return sum(1 for cur in self.outcomes if cur.verdict == verdict)

    @property
    def summary(self):
        """Counts per verdict

        :rtype: :class:`dict`
        """
        retval = {"queries": len(self.outcomes)}
        for verdict in (HOLDS, FAILS, VALUE, ERROR):
            retval[verdict] = self.count(verdict)
        return retval

    @property
    def exit_code(self):
        """0 when every statement was answered, 1 otherwise

        :rtype: :class:`int`
        """
        return 1 if self.count(ERROR) else 0

    def format(self, fmt="text"):
        """Renders the report

        :param str fmt: ``text`` or ``json``
        :rtype: :class:`str`
        """
        if fmt == "json":
            data = {"results": [cur.to_dict() for cur in self.outcomes],
                    "summary": self.summary}
            return json.dumps(data, indent=1, sort_keys=True) + "\n"
        if fmt != "text":
            raise ConfigurationError("unsupported report format " + str(fmt))
        lines = [cur.format() for cur in self.outcomes]
        summary = self.summary
        lines.append("queries: {0}, holds: {1}, fails: {2}, values: {3}, "
                     "errors: {4}".format(summary["queries"], summary[HOLDS],
                                          summary[FAILS], summary[VALUE],
                                          summary[ERROR]))
        return "".join(line + "\n" for line in lines)


class QueryEngine(object):
    """Routes statements to the model that answers them

    :param cwm: preferential model
    :type cwm: :class:`~.cwm.CwmModel`
    :param family: connective family of the fuzzy model
    :param dist: element id to probability mass, uniform when None
    :param str mode:
        ``pref`` checks strict inclusions in the preferential model, ``fuzzy``
        as fuzzy inclusions of degree 1
    :param str strategy: ``default``, ``fast`` or ``exact``
    """

    # pylint: disable=too-many-arguments
    def __init__(self, cwm, family=None, dist=None, mode="pref",
                 strategy="default"):
        super(QueryEngine, self).__init__()
        if mode not in MODES:
            raise ConfigurationError("unknown mode " + str(mode))
        if strategy not in STRATEGIES:
            raise ConfigurationError("unknown strategy " + str(strategy))
        self._log = logging.getLogger(__name__)
        self._cwm = cwm
        self._fuzzy = FuzzyModel.from_cwm(cwm, family)
        self._dist = dist
        self._prob = None
        self._mode = mode
        self._strategy = strategy

    @property
    def fuzzy(self):
        """Fuzzy model answering degree queries

        :rtype: :class:`~.fuzzy.FuzzyModel`
        """
        return self._fuzzy

    @property
    def prob(self):
        """Probability model, built on first use

        :rtype: :class:`~.probability.ProbModel`
        """
        if self._prob is None:
            self._prob = build_prob(self._fuzzy, self._dist)
        return self._prob

    def run(self, text):
        """Evaluates every statement of a query file

        :param str text: query file content
        :rtype: :class:`RunReport`
        """
        report = RunReport()
        for cur in parse_query_file(text):
            if cur.error is not None:
                report.outcomes.append(QueryOutcome(
                    cur.line, cur.text, ERROR, error=str(cur.error)))
                continue
            report.outcomes.append(self.evaluate(cur.statement, cur.line))
        self._log.info("evaluated %d statements, %d errors",
                       len(report.outcomes), report.count(ERROR))
        return report

    def evaluate(self, query, line=1):
        """Evaluates one parsed query

        :param query: parsed query
        :param int line: line number reported in the outcome
        :rtype: :class:`QueryOutcome`
        """
        text = print_query(query)
        try:
            verdict, details = self._dispatch(query)
        except SomLogicError as err:
            return QueryOutcome(line, text, ERROR, error=str(err))
        return QueryOutcome(line, text, verdict, **details)

    def _dispatch(self, query):
        # pylint: disable=too-many-return-statements
        if isinstance(query, CheckAxiom):
            return self._check(query.axiom)
        if isinstance(query, Prob):
            return VALUE, {"value": self.prob.prob(query.concept)}
        if isinstance(query, CondProb):
            return VALUE, {"value": self.prob.cond_prob(query.concept,
                                                        query.given)}
        if isinstance(query, ProbGivenElement):
            return VALUE, {"value": self.prob.prob_given_element(
                query.concept, query.element)}
        if isinstance(query, Likelihood):
            return VALUE, {"value": self.prob.likelihood(query.element,
                                                         query.concept)}
        if isinstance(query, InclusionDegree):
            value, witness = self._fuzzy.inclusion_degree(query.lhs,
                                                          query.rhs)
            return VALUE, {"value": value, "witness": witness}
        if isinstance(query, Membership):
            return VALUE, {"value": self._fuzzy.membership(query.concept,
                                                           query.element)}
        if isinstance(query, Plausibility):
            return VALUE, {"value": plausibility(
                self._cwm.stats(query.src), self._cwm.stats(query.dst))}
        raise TypeError("unsupported query {0!r}".format(query))

    def _check(self, axiom):
        if isinstance(axiom, (FuzzyInclusion, FuzzyAssertion)) or (
                isinstance(axiom, StrictInclusion) and self._mode == "fuzzy"):
            result = self._fuzzy.check_fuzzy_axiom(axiom)
            return _verdict(result.holds), {
                "value": result.degree, "method": "Fuzzy",
                "witness": result.witness}
        if isinstance(axiom, StrictInclusion):
            return self._check_strict(axiom)
        if isinstance(axiom, DefeasibleInclusion):
            return self._check_typ(axiom)
        raise TypeError("unsupported axiom {0!r}".format(axiom))

    def _check_strict(self, axiom):
        atomic = isinstance(axiom.lhs, Atom) and isinstance(axiom.rhs, Atom)
        note = None
        if atomic and self._strategy == "fast":
            result = self._cwm.check_strict_fast(axiom.lhs.name,
                                                 axiom.rhs.name)
            if not result.holds:
                note = "sufficient test only"
        elif atomic and self._strategy == "default":
            result = self._cwm.check_strict(axiom.lhs.name, axiom.rhs.name)
            if result.method == GENERAL:
                note = "fast test failed, fell back to General"
        else:
            if self._strategy == "fast":
                note = "no fast test for complex concepts, used General"
            result = self._cwm.check_strict_general(axiom.lhs, axiom.rhs)
        return _verdict(result.holds), _details(result, note)

    def _check_typ(self, axiom):
        atomic = isinstance(axiom.lhs, Atom) and isinstance(axiom.rhs, Atom)
        note = None
        if atomic and self._strategy != "exact":
            result = self._cwm.check_typ_fast(axiom.lhs.name, axiom.rhs.name)
        else:
            if self._strategy == "fast":
                note = "no fast test for complex concepts, used General"
            result = self._cwm.check_typ_general(axiom.lhs, axiom.rhs,
                                                 route_atomic=False)
            if atomic:
                result.plausibility = plausibility(
                    self._cwm.stats(axiom.lhs.name),
                    self._cwm.stats(axiom.rhs.name))
        return _verdict(result.holds), _details(result, note)


def _verdict(holds):
    return HOLDS if holds else FAILS


def _details(result, note):
    return {"method": result.method, "counterexample": result.counterexample,
            "plausibility": result.plausibility, "note": note}


if __name__ == "__main__":  # pragma: no cover
    pass
