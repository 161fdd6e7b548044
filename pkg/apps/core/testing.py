"""
Hypothesis strategies producing random well-formed transition networks.

Every generated network is availability-aware for all agents: the actions an
agent has at a state depend only on the label it observes there.
"""
from hypothesis import strategies as st

from .models import Goal, TransitionNetwork


@st.composite
def transition_networks(draw, max_states=6, max_agents_per_role=2, max_actions=3,
                        max_labels=3, total=False, low_total=False, max_low=None):
    state_count = draw(st.integers(min_value=1, max_value=max_states))
    states = [f"s{index}" for index in range(state_count)]
    high = [f"H{index}" for index in range(draw(st.integers(1, max_agents_per_role)))]
    low_bound = max_agents_per_role if max_low is None else max_low
    low = [f"L{index}" for index in range(draw(st.integers(1, low_bound)))]
    actions = [f"a{index}" for index in range(draw(st.integers(1, max_actions)))]
    labels = [f"o{index}" for index in range(draw(st.integers(1, max_labels)))]

    obs = {}
    for state in states:
        for agent in high + low:
            obs[(state, agent)] = draw(st.sampled_from(labels))

    transitions = {}
    for agent in high + low:
        seen_labels = sorted({obs[(state, agent)] for state in states})
        for label in seen_labels:
            if total or (low_total and agent in low):
                enabled = actions
            else:
                enabled = sorted(draw(st.sets(st.sampled_from(actions))))
            for state in states:
                if obs[(state, agent)] != label:
                    continue
                for action in enabled:
                    transitions[(state, agent, action)] = draw(st.sampled_from(states))

    return TransitionNetwork(
        name='Random',
        states=states,
        initial='s0',
        high=high,
        low=low,
        actions=actions,
        observations=set(obs.values()),
        obs=obs,
        transitions=transitions,
    )


@st.composite
def goals_for(draw, net, kinds=('safety', 'reachability')):
    kind = draw(st.sampled_from(kinds))
    states = net.sorted_states()
    chosen = draw(st.sets(st.sampled_from(states), min_size=1, max_size=len(states)))
    return Goal(kind, chosen)
