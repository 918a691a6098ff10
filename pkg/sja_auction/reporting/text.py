"""
Human-readable command reports rendered with jinja2.

Each command hands its JSON document to :func:`render_text`; the templates
only read keys, so text and JSON output never disagree on a value.
"""

from __future__ import annotations

from typing import Any, Dict

from jinja2 import DictLoader, Environment, StrictUndefined


def _num(value: Any, digits: int = 10) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (int, float)):
        return f"{value:.{digits}g}"
    return str(value)


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


TEMPLATES: Dict[str, str] = {
    "prices": """\
SJA prices for m={{ doc.m }}{{ " (conjectural)" if doc.conjectural else "" }}
{% for p in doc.p %}
  r={{ loop.index }}  p={{ p | num }}  mu={{ doc.mu[loop.index0] | num }}  \
lambda={{ doc["lambda"][loop.index0] | num }}
{% endfor %}
slice conditions: {{ doc.slices.passed | verdict }} \
(max residual {{ doc.slices.max_residual | num(3) }})
{% for note in doc.notes %}
note: {{ note }}
{% endfor %}
""",
    "certify": """\
Dual certificate m={{ doc.m }} N={{ doc.N }}: {{ doc.passed | verdict }}
  objective  {{ doc.objective | num }}
  revenue    {{ doc.revenue | num }} ({{ doc.revenue_method }})
  gap        {{ doc.gap | num }}
  eps        {{ doc.eps | num }}
  bound      {{ doc.bound | num }}
  feasible   {{ doc.feasible | num }}
{% for name, value in doc.residuals | dictsort %}
  {{ name }}: {{ value | num(4) }}
{% endfor %}
{% for v in doc.violations %}
  violated {{ v.condition }}{% if v.cell %} at {{ v.cell }}{% endif %}: \
{{ v.residual | num(4) }} > {{ v.bound | num(4) }}
{% endfor %}
""",
    "revenue": """\
Expected revenue m={{ doc.m }}: {{ doc.revenue.value | num }} ({{ doc.revenue.method }}\
{% if doc.revenue.stderr is not none %}, stderr {{ doc.revenue.stderr | num(3) }}{% endif %})
{% for row in doc.size_classes %}
  size {{ row.r }}: price {{ row.price | num }}  region volume {{ row.volume | num }}
{% endfor %}
{% for b in doc.baselines %}
  {{ b.name }}: {{ b.revenue | num }} at price {{ b.price | num }}
{% endfor %}
""",
    "deficiency-scan": """\
Deficiency scan m={{ doc.m }} grid={{ doc.grid }}: {{ doc.passed | verdict }}
{% for row in doc.bodies %}
  r={{ row.r }} {{ row.mode }}: best {{ row.best_deficiency | num }}  \
slack {{ row.slack_bound | num }}  candidates {{ row.candidates }}
{% endfor %}
""",
    "myerson": """\
Reserve price for {{ doc.distribution }}: {{ doc.reserve | num }}
  dual objective {{ doc.objective | num }}  revenue {{ doc.revenue | num }}  \
{{ doc.passed | verdict }}
""",
    "nonregular": """\
Non-regular example: {{ doc.passed | verdict }}
  x0={{ doc.x0 | num }} x1={{ doc.x1 | num }} x2={{ doc.x2 | num }} x3={{ doc.x3 | num }}
  optimal value  {{ doc.optimal_value | num }}
  relaxed value  {{ doc.relaxed_value | num }}
  gap            {{ doc.gap | num }}
{% for name, ok in doc.checks | dictsort %}
  {{ name }}: {{ ok | num }}
{% endfor %}
""",
}


def _environment() -> Environment:
    env = Environment(
        loader=DictLoader(TEMPLATES),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        autoescape=False,
    )
    env.filters["num"] = _num
    env.filters["verdict"] = _verdict
    return env


_ENV = _environment()


def render_text(command: str, document: Dict[str, Any]) -> str:
    """Render ``document`` with the template registered for ``command``."""
    return _ENV.get_template(command).render(doc=document)
