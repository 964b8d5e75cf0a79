"""
불리언 함수 열거 및 최소 지지집합 탐색 모듈
"""
