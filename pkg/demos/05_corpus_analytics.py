"""Aggregate queries over the corpus graph: which object classes get grabbed
or change state the most, and how long each activity takes."""

from vh2kg import analytics
from vh2kg.fixtures import (load_fixture_affordance_table,
                            load_fixture_environment,
                            load_fixture_property_table,
                            load_fixture_scripts)
from vh2kg.rdf import KgDocument, graph_stats
from vh2kg.simulate import run_script
from vh2kg.synth import ActivityMeta, build_activity_kg

env = load_fixture_environment()
affordances = load_fixture_affordance_table()
properties = load_fixture_property_table()

doc = KgDocument()
for script in load_fixture_scripts():
    trace = run_script(script, env, affordance_table=affordances,
                       property_table=properties)
    build_activity_kg(trace,
                      ActivityMeta(name=script.name, category=script.category,
                                   description=script.description),
                      affordances, properties, doc=doc)

print("corpus:", graph_stats(doc))

print("\nmost grabbed object classes:")
print(analytics.format_ranking(analytics.grab_frequency(doc)[:8],
                               ("object class", "grabs")))

print("most state-changed object classes:")
print(analytics.format_ranking(analytics.state_change_frequency(doc)[:8],
                               ("object class", "changes")))

print("longest leisure activities:")
ranking = [(iri.rsplit("/", 1)[-1], round(seconds, 1))
           for iri, seconds in analytics.duration_by_activity(doc, "Leisure")]
print(analytics.format_ranking(ranking, ("activity", "seconds")))
