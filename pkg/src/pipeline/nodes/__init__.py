# Pipeline nodes: each corresponds to one LangGraph stage
