# Pipeline package: LangGraph check runner + nodes
